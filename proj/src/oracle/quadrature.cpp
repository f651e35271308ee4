#include "hyperforge/oracle/quadrature.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hyperforge/errors.h"

namespace hyperforge::oracle {

namespace {

HermiteRule compute_rule(std::size_t n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    double off = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[static_cast<Eigen::Index>(i)];
    double v = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace

const HermiteRule& gauss_hermite(std::size_t n) {
  if (n == 0) throw HyperforgeError(ErrorCode::kInvalidArgument, "need at least one node");
  static std::mutex mu;
  static std::map<std::size_t, HermiteRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

HermiteRule normal_rule(std::size_t n, double mean, double variance) {
  const HermiteRule& base = gauss_hermite(n);
  HermiteRule out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const double scale = std::sqrt(2.0 * variance);
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    out.nodes[i] = mean + scale * base.nodes[i];
    out.weights[i] = norm * base.weights[i];
  }
  return out;
}

}  // namespace hyperforge::oracle
