#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperforge/phase_poly.h"

namespace hyperforge::oracle {

using cplx = std::complex<double>;

// Phase polynomial lowered onto mode indices for fast pointwise evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  // Every mode of f must appear in `modes`; throws UnknownMode otherwise.
  CompiledPoly(const PhasePolynomial& f, std::span<const ModeId> modes);

  double operator()(std::span<const double> x) const;

  // Coefficients of f as a polynomial in x[mode] with the other coordinates
  // fixed: out[k] multiplies x[mode]^k. out is resized to max degree + 1.
  void slice(std::size_t mode, std::span<const double> x, std::vector<double>& out) const;
  int degree_in(std::size_t mode) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, int>> factors;  // (mode index, exponent)
  };
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

// Dense amplitude tensor over n modes with d levels each, first mode most
// significant. Every kernel exists twice: `serial` is the reference and
// `parallel` the OpenMP version; tests hold them to agreement.
struct TensorShape {
  std::size_t modes = 0;
  std::size_t dim = 0;

  std::size_t size() const;
  std::size_t stride(std::size_t mode) const;
};

namespace serial {

// psi <- (I x .. x M x .. x I) psi with M acting on `mode`.
void apply_mode_matrix(Eigen::VectorXcd& psi, const TensorShape& shape, std::size_t mode,
                       const Eigen::MatrixXcd& m);

// psi[i] *= exp(i F(grid(i))) where grid(i) picks eigenvalues[k][i_k].
void apply_phase_grid(Eigen::VectorXcd& psi, const TensorShape& shape,
                      const std::vector<Eigen::VectorXd>& eigenvalues, const CompiledPoly& f);

// sum over the product grid of prod_k w_k[i_k] * g(point), with one node set
// per dimension.
template <class G>
cplx grid_sum(const std::vector<std::vector<double>>& nodes,
              const std::vector<std::vector<double>>& weights, G&& g);

}  // namespace serial

namespace parallel {

void apply_mode_matrix(Eigen::VectorXcd& psi, const TensorShape& shape, std::size_t mode,
                       const Eigen::MatrixXcd& m);
void apply_phase_grid(Eigen::VectorXcd& psi, const TensorShape& shape,
                      const std::vector<Eigen::VectorXd>& eigenvalues, const CompiledPoly& f);
template <class G>
cplx grid_sum(const std::vector<std::vector<double>>& nodes,
              const std::vector<std::vector<double>>& weights, G&& g);

}  // namespace parallel

// ---- grid sums ----------------------------------------------------------------

namespace detail {

inline std::size_t grid_size(const std::vector<std::vector<double>>& nodes) {
  std::size_t n = 1;
  for (const auto& v : nodes) n *= v.size();
  return n;
}

// Decodes flat index `idx` into a point and its product weight.
inline double grid_point(const std::vector<std::vector<double>>& nodes,
                         const std::vector<std::vector<double>>& weights, std::size_t idx,
                         std::vector<double>& x) {
  double w = 1.0;
  for (std::size_t k = nodes.size(); k-- > 0;) {
    std::size_t n = nodes[k].size();
    std::size_t i = idx % n;
    idx /= n;
    x[k] = nodes[k][i];
    w *= weights[k][i];
  }
  return w;
}

}  // namespace detail

template <class G>
cplx serial::grid_sum(const std::vector<std::vector<double>>& nodes,
                      const std::vector<std::vector<double>>& weights, G&& g) {
  const std::size_t total = detail::grid_size(nodes);
  std::vector<double> x(nodes.size());
  cplx acc = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    double w = detail::grid_point(nodes, weights, idx, x);
    acc += w * g(std::span<const double>(x));
  }
  return acc;
}

template <class G>
cplx parallel::grid_sum(const std::vector<std::vector<double>>& nodes,
                        const std::vector<std::vector<double>>& weights, G&& g) {
  const long long total = static_cast<long long>(detail::grid_size(nodes));
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel reduction(+ : re, im)
  {
    std::vector<double> x(nodes.size());
#pragma omp for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
      double w = detail::grid_point(nodes, weights, static_cast<std::size_t>(idx), x);
      cplx v = w * g(std::span<const double>(x));
      re += v.real();
      im += v.imag();
    }
  }
  return {re, im};
}

}  // namespace hyperforge::oracle
