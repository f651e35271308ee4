#include "hyperforge/oracle/kernels.h"

#include <algorithm>
#include <cmath>

#include "hyperforge/errors.h"

namespace hyperforge::oracle {

CompiledPoly::CompiledPoly(const PhasePolynomial& f, std::span<const ModeId> modes)
    : constant_(f.constant()) {
  for (const auto& [m, c] : f.terms()) {
    Term t{c, {}};
    for (const auto& [id, e] : m.factors()) {
      auto it = std::find(modes.begin(), modes.end(), id);
      if (it == modes.end()) {
        throw HyperforgeError(ErrorCode::kUnknownMode,
                              "polynomial mentions mode '" + id.str() + "' outside the register");
      }
      t.factors.emplace_back(static_cast<std::size_t>(it - modes.begin()), e);
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledPoly::operator()(std::span<const double> x) const {
  double acc = constant_;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& [k, e] : t.factors) {
      double xk = x[k];
      for (int j = 0; j < e; ++j) v *= xk;
    }
    acc += v;
  }
  return acc;
}

int CompiledPoly::degree_in(std::size_t mode) const {
  int d = 0;
  for (const auto& t : terms_) {
    for (const auto& [k, e] : t.factors) {
      if (k == mode) d = std::max(d, e);
    }
  }
  return d;
}

void CompiledPoly::slice(std::size_t mode, std::span<const double> x,
                         std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(degree_in(mode)) + 1, 0.0);
  out[0] = constant_;
  for (const auto& t : terms_) {
    double v = t.coeff;
    int power = 0;
    for (const auto& [k, e] : t.factors) {
      if (k == mode) {
        power = e;
        continue;
      }
      double xk = x[k];
      for (int j = 0; j < e; ++j) v *= xk;
    }
    out[static_cast<std::size_t>(power)] += v;
  }
}

std::size_t TensorShape::size() const {
  std::size_t n = 1;
  for (std::size_t k = 0; k < modes; ++k) n *= dim;
  return n;
}

std::size_t TensorShape::stride(std::size_t mode) const {
  std::size_t s = 1;
  for (std::size_t k = mode + 1; k < modes; ++k) s *= dim;
  return s;
}

namespace {

void decode(std::size_t idx, const TensorShape& shape, std::vector<std::size_t>& digits) {
  for (std::size_t k = shape.modes; k-- > 0;) {
    digits[k] = idx % shape.dim;
    idx /= shape.dim;
  }
}

}  // namespace

// ---- serial reference ---------------------------------------------------------

void serial::apply_mode_matrix(Eigen::VectorXcd& psi, const TensorShape& shape, std::size_t mode,
                               const Eigen::MatrixXcd& m) {
  const std::size_t d = shape.dim;
  const std::size_t inner = shape.stride(mode);
  const std::size_t outer = shape.size() / (inner * d);
  Eigen::VectorXcd col(d);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      const std::size_t base = o * d * inner + r;
      for (std::size_t j = 0; j < d; ++j) col[j] = psi[base + j * inner];
      Eigen::VectorXcd out = m * col;
      for (std::size_t i = 0; i < d; ++i) psi[base + i * inner] = out[i];
    }
  }
}

void serial::apply_phase_grid(Eigen::VectorXcd& psi, const TensorShape& shape,
                              const std::vector<Eigen::VectorXd>& eigenvalues,
                              const CompiledPoly& f) {
  std::vector<std::size_t> digits(shape.modes);
  std::vector<double> x(shape.modes);
  const std::size_t n = shape.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    decode(idx, shape, digits);
    for (std::size_t k = 0; k < shape.modes; ++k) x[k] = eigenvalues[k][digits[k]];
    psi[idx] *= std::polar(1.0, f(x));
  }
}

// ---- OpenMP -------------------------------------------------------------------

void parallel::apply_mode_matrix(Eigen::VectorXcd& psi, const TensorShape& shape,
                                 std::size_t mode, const Eigen::MatrixXcd& m) {
  const long long d = static_cast<long long>(shape.dim);
  const long long inner = static_cast<long long>(shape.stride(mode));
  const long long fibers = static_cast<long long>(shape.size()) / d;
#pragma omp parallel
  {
    Eigen::VectorXcd col(d);
    Eigen::VectorXcd out(d);
#pragma omp for schedule(static)
    for (long long fiber = 0; fiber < fibers; ++fiber) {
      const long long o = fiber / inner;
      const long long r = fiber % inner;
      const long long base = o * d * inner + r;
      for (long long j = 0; j < d; ++j) col[j] = psi[base + j * inner];
      out.noalias() = m * col;
      for (long long i = 0; i < d; ++i) psi[base + i * inner] = out[i];
    }
  }
}

void parallel::apply_phase_grid(Eigen::VectorXcd& psi, const TensorShape& shape,
                                const std::vector<Eigen::VectorXd>& eigenvalues,
                                const CompiledPoly& f) {
  const long long n = static_cast<long long>(shape.size());
#pragma omp parallel
  {
    std::vector<std::size_t> digits(shape.modes);
    std::vector<double> x(shape.modes);
#pragma omp for schedule(static)
    for (long long idx = 0; idx < n; ++idx) {
      decode(static_cast<std::size_t>(idx), shape, digits);
      for (std::size_t k = 0; k < shape.modes; ++k) x[k] = eigenvalues[k][digits[k]];
      psi[idx] *= std::polar(1.0, f(x));
    }
  }
}

}  // namespace hyperforge::oracle
