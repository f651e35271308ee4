#include "hyperforge/oracle/fock.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "hyperforge/errors.h"

namespace hyperforge::oracle {

namespace {

const cplx kI{0.0, 1.0};

enum class Generator { kQ, kP, kSqueeze };

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Eigen::MatrixXcd generator_matrix(Generator g, int dim) {
  Eigen::MatrixXcd a = annihilation(dim);
  Eigen::MatrixXcd ad = a.adjoint();
  switch (g) {
    case Generator::kQ:
      return (a + ad) / std::sqrt(2.0);
    case Generator::kP:
      return (a - ad) / (kI * std::sqrt(2.0));
    case Generator::kSqueeze:
      // (qp + pq)/2 in ladder form
      return kI * (ad * ad - a * a) / 2.0;
  }
  return {};
}

const Spectrum& spectrum(Generator g, int dim) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Spectrum> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<int>(g), dim);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(generator_matrix(g, dim));
    it = cache.emplace(key, Spectrum{es.eigenvalues(), es.eigenvectors()}).first;
  }
  return it->second;
}

template <class F>
Eigen::MatrixXcd function_of(const Spectrum& sp, F&& fn) {
  Eigen::VectorXcd diag(sp.values.size());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) diag[i] = fn(sp.values[i]);
  return sp.vectors * diag.asDiagonal() * sp.vectors.adjoint();
}

int padded_dim(int d) { return std::max(2 * d, d + 64); }

// Top-left d x d block of fn(G) computed in a padded space, so that the
// truncation acts on the result rather than on the generator.
template <class F>
Eigen::MatrixXcd padded_function(Generator g, int d, F&& fn) {
  Eigen::MatrixXcd full = function_of(spectrum(g, padded_dim(d)), fn);
  return full.topLeftCorner(d, d);
}

void apply_mode(FockState& st, std::size_t mode, const Eigen::MatrixXcd& m) {
  auto shape = st.config.shape();
  if (st.config.parallel) {
    parallel::apply_mode_matrix(st.amplitudes, shape, mode, m);
  } else {
    serial::apply_mode_matrix(st.amplitudes, shape, mode, m);
  }
}

void update_leakage(FockState& st) {
  st.leakage = std::max(st.leakage, 1.0 - st.amplitudes.squaredNorm());
}

void apply_window(FockState& st, std::size_t mode, Generator g, double m, double sigma) {
  if (!(sigma > 0.0)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "window width must be positive");
  }
  update_leakage(st);
  const auto& sp = spectrum(g, st.config.cutoff);
  apply_mode(st, mode, function_of(sp, [&](double x) -> cplx {
               double u = x - m;
               return std::exp(-u * u / (4.0 * sigma * sigma));
             }));
  double n = st.amplitudes.norm();
  if (n == 0.0) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "measurement window has zero overlap");
  }
  st.amplitudes *= std::sqrt(std::max(0.0, 1.0 - st.leakage)) / n;
}

Eigen::VectorXcd single_mode_squeezed(int d, double r, double& leakage) {
  // Large pad: the generator is unbounded and its truncation must not reach
  // the kept levels.
  int big = std::max(4 * d, d + 256);
  const auto& sp = spectrum(Generator::kSqueeze, big);
  Eigen::VectorXcd phases(sp.values.size());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) phases[i] = std::polar(1.0, -r * sp.values[i]);
  Eigen::VectorXcd full = sp.vectors * (phases.asDiagonal() * sp.vectors.row(0).adjoint());
  Eigen::VectorXcd v = full.head(d);
  leakage = std::max(0.0, 1.0 - v.squaredNorm());
  return v;
}

}  // namespace

// ---- config -------------------------------------------------------------------

double FockConfig::r(const ModeId& mode) const {
  auto it = squeezing.find(mode);
  return it == squeezing.end() ? default_squeezing : it->second;
}

std::size_t FockConfig::index_of(const ModeId& mode) const {
  auto it = std::find(modes.begin(), modes.end(), mode);
  if (it == modes.end()) {
    throw HyperforgeError(ErrorCode::kUnknownMode, "mode '" + mode.str() + "' not in register");
  }
  return static_cast<std::size_t>(it - modes.begin());
}

TensorShape FockConfig::shape() const {
  std::size_t total = 1;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (total > max_amplitudes / static_cast<std::size_t>(cutoff)) {
      throw HyperforgeError(ErrorCode::kDimensionOverflow,
                            "cutoff " + std::to_string(cutoff) + " on " +
                                std::to_string(modes.size()) + " modes exceeds " +
                                std::to_string(max_amplitudes) + " amplitudes");
    }
    total *= static_cast<std::size_t>(cutoff);
  }
  return TensorShape{modes.size(), static_cast<std::size_t>(cutoff)};
}

void FockConfig::validate() const {
  if (cutoff < 2) throw HyperforgeError(ErrorCode::kInvalidArgument, "cutoff must be >= 2");
  auto sorted = modes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "register modes must be distinct");
  }
  (void)shape();
}

// ---- operators ----------------------------------------------------------------

Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd position(int dim) { return generator_matrix(Generator::kQ, dim); }
Eigen::MatrixXcd momentum(int dim) { return generator_matrix(Generator::kP, dim); }

QuadratureOperator quadrature_operator(const ModeId& mode, QuadKind kind, int cutoff) {
  return QuadratureOperator{mode, kind, kind == QuadKind::kQ ? position(cutoff) : momentum(cutoff)};
}

// ---- states -------------------------------------------------------------------

FockState prepare_squeezed_vacuum(const FockConfig& cfg) {
  cfg.validate();
  FockState st;
  st.config = cfg;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& m : cfg.modes) {
    double leak = 0.0;
    Eigen::VectorXcd v = single_mode_squeezed(cfg.cutoff, cfg.r(m), leak);
    Eigen::VectorXcd next(psi.size() * v.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(i * v.size(), v.size()) = psi[i] * v;
    psi = std::move(next);
  }
  st.amplitudes = std::move(psi);
  st.leakage = std::max(0.0, 1.0 - st.amplitudes.squaredNorm());
  if (st.leakage > cfg.leakage_budget) {
    throw HyperforgeError(ErrorCode::kCutoffTooSmall,
                          "squeezed vacuum leaks " + format_double(st.leakage) +
                              " beyond cutoff " + std::to_string(cfg.cutoff) + " (budget " +
                              format_double(cfg.leakage_budget) + ")");
  }
  return st;
}

FockState apply_phase_unitary(FockState st, const PhasePolynomial& f) {
  const auto& cfg = st.config;
  auto shape = cfg.shape();
  CompiledPoly compiled(f, cfg.modes);
  std::vector<std::size_t> touched;
  for (const auto& m : f.modes()) touched.push_back(cfg.index_of(m));

  const auto& sp = spectrum(Generator::kQ, cfg.cutoff);
  std::vector<Eigen::VectorXd> grid(shape.modes, sp.values);
  for (auto k : touched) apply_mode(st, k, sp.vectors.adjoint());
  if (cfg.parallel) {
    parallel::apply_phase_grid(st.amplitudes, shape, grid, compiled);
  } else {
    serial::apply_phase_grid(st.amplitudes, shape, grid, compiled);
  }
  for (auto k : touched) apply_mode(st, k, sp.vectors);
  return st;
}

FockState apply_qp_coupling(FockState st, const ModeId& a, const ModeId& b, double lambda) {
  if (a == b) throw HyperforgeError(ErrorCode::kInvalidArgument, "q-p coupling needs two modes");
  const auto& cfg = st.config;
  auto shape = cfg.shape();
  std::size_t ia = cfg.index_of(a);
  std::size_t ib = cfg.index_of(b);
  const auto& sq = spectrum(Generator::kQ, cfg.cutoff);
  const auto& spp = spectrum(Generator::kP, cfg.cutoff);

  std::vector<Eigen::VectorXd> grid(shape.modes, sq.values);
  grid[ib] = spp.values;
  PhasePolynomial coupling;
  coupling.add_term(Monomial::power(a, 1) * Monomial::power(b, 1), lambda);
  CompiledPoly compiled(coupling, cfg.modes);

  apply_mode(st, ia, sq.vectors.adjoint());
  apply_mode(st, ib, spp.vectors.adjoint());
  if (cfg.parallel) {
    parallel::apply_phase_grid(st.amplitudes, shape, grid, compiled);
  } else {
    serial::apply_phase_grid(st.amplitudes, shape, grid, compiled);
  }
  apply_mode(st, ia, sq.vectors);
  apply_mode(st, ib, spp.vectors);
  return st;
}

FockState apply_gaussian_numeric(FockState st, const GaussianOp& op, double window_sigma) {
  const int d = st.config.cutoff;
  (void)st.config.shape();
  struct Visitor {
    FockState& st;
    int d;
    double sigma;

    std::size_t idx(const ModeId& m) const { return st.config.index_of(m); }

    void operator()(const Zdisp& o) {
      PhasePolynomial f;
      f.add_term(Monomial::power(o.mode, 1), o.s);
      st = apply_phase_unitary(std::move(st), f);
    }
    void operator()(const ShearQ& o) {
      PhasePolynomial f;
      f.add_term(Monomial::power(o.mode, 2), o.s / 2.0);
      st = apply_phase_unitary(std::move(st), f);
    }
    void operator()(const CPhase& o) {
      PhasePolynomial f;
      f.add_term(Monomial::multilinear(o.modes), o.t);
      st = apply_phase_unitary(std::move(st), f);
    }
    void operator()(const Xdisp& o) {
      apply_mode(st, idx(o.mode), padded_function(Generator::kP, d, [&](double p) {
                   return std::polar(1.0, -o.s * p);
                 }));
      update_leakage(st);
    }
    void operator()(const ShearP& o) {
      apply_mode(st, idx(o.mode), padded_function(Generator::kP, d, [&](double p) {
                   return std::polar(1.0, o.s * p * p / 2.0);
                 }));
      update_leakage(st);
    }
    void operator()(const Squeeze& o) {
      apply_mode(st, idx(o.mode), padded_function(Generator::kSqueeze, d, [&](double k) {
                   return std::polar(1.0, -o.s * k);
                 }));
      update_leakage(st);
    }
    void operator()(const Rotate& o) {
      // (q^2 + p^2)/2 = n + 1/2 exactly
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      for (int n = 0; n < d; ++n) m(n, n) = std::polar(1.0, o.s * (n + 0.5));
      apply_mode(st, idx(o.mode), m);
    }
    void operator()(const MeasureQ& o) { apply_window(st, idx(o.mode), Generator::kQ, o.m, sigma); }
    void operator()(const MeasureP& o) { apply_window(st, idx(o.mode), Generator::kP, o.m, sigma); }
  };
  std::visit(Visitor{st, d, window_sigma}, op);
  return st;
}

// ---- readout ------------------------------------------------------------------

double fidelity(const FockState& x, const FockState& y) {
  if (x.amplitudes.size() != y.amplitudes.size()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "fidelity between different registers");
  }
  double nx = x.amplitudes.squaredNorm();
  double ny = y.amplitudes.squaredNorm();
  return std::norm(x.amplitudes.dot(y.amplitudes)) / (nx * ny);
}

double reduced_fidelity(const FockState& actual, const ModeId& mode, const FockState& pred) {
  auto shape = actual.config.shape();
  std::size_t k = actual.config.index_of(mode);
  const std::size_t d = shape.dim;
  const std::size_t inner = shape.stride(k);
  const std::size_t outer = shape.size() / (inner * d);
  if (static_cast<std::size_t>(pred.amplitudes.size()) != outer * inner) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "prediction register does not match");
  }
  double total = 0.0;
  Eigen::VectorXcd slice(static_cast<Eigen::Index>(outer * inner));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t r = 0; r < inner; ++r) {
        slice[static_cast<Eigen::Index>(o * inner + r)] =
            actual.amplitudes[static_cast<Eigen::Index>(o * d * inner + j * inner + r)];
      }
    }
    total += std::norm(pred.amplitudes.dot(slice));
  }
  return total / (actual.amplitudes.squaredNorm() * pred.amplitudes.squaredNorm());
}

std::complex<double> moments(const FockState& st, const std::vector<QuadFactor>& product) {
  FockState work = st;
  const int d = st.config.cutoff;
  for (auto it = product.rbegin(); it != product.rend(); ++it) {
    Eigen::MatrixXcd op = it->kind == QuadKind::kQ ? position(d) : momentum(d);
    Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(d, d);
    for (int j = 0; j < it->power; ++j) pw = pw * op;
    apply_mode(work, st.config.index_of(it->mode), pw);
  }
  return st.amplitudes.dot(work.amplitudes) / st.amplitudes.squaredNorm();
}

}  // namespace hyperforge::oracle
