#include "hyperforge/oracle/verify.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperforge/engine.h"
#include "hyperforge/errors.h"
#include "hyperforge/oracle/gaussian_wave.h"
#include "hyperforge/oracle/quadrature.h"
#include "hyperforge/recipes.h"

namespace hyperforge::oracle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_diagonal(const GaussianOp& op) {
  return std::holds_alternative<Zdisp>(op) || std::holds_alternative<ShearQ>(op) ||
         std::holds_alternative<CPhase>(op);
}

// The op itself as a phase polynomial, for the diagonal ops.
PhasePolynomial diagonal_phase(const GaussianOp& op) {
  PhasePolynomial u;
  std::visit(overloaded{
                 [&](const Zdisp& o) { u.add_term(Monomial::power(o.mode, 1), o.s); },
                 [&](const ShearQ& o) { u.add_term(Monomial::power(o.mode, 2), o.s / 2.0); },
                 [&](const CPhase& o) { u.add_term(Monomial::multilinear(o.modes), o.t); },
                 [](const auto&) {},
             },
             op);
  return u;
}

double predicted_r(const GaussianOp& op, const FockConfig& cfg, const VerifyOptions& opts,
                   const ModeId& a) {
  double r = cfg.r(a);
  if (const auto* sq = std::get_if<Squeeze>(&op); sq && opts.track_squeezing) r += sq->s;
  return r;
}

double variance_of(const FockConfig& cfg, const ModeId& m) { return std::exp(2.0 * cfg.r(m)) / 2.0; }

// Register indices of the modes a polynomial depends on, minus `skip`.
std::vector<std::size_t> mentioned(const FockConfig& cfg, std::initializer_list<const PhasePolynomial*> fs,
                                   std::optional<std::size_t> skip) {
  std::vector<std::size_t> out;
  for (const auto* f : fs) {
    for (const auto& m : f->modes()) out.push_back(cfg.index_of(m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (skip) std::erase(out, *skip);
  return out;
}

struct Grid {
  std::vector<std::size_t> dims;  // register indices
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;
};

Grid spectator_grid(const FockConfig& cfg, const std::vector<std::size_t>& dims, std::size_t n) {
  Grid g;
  g.dims = dims;
  for (auto k : dims) {
    auto rule = normal_rule(n, 0.0, variance_of(cfg, cfg.modes[k]));
    g.nodes.push_back(std::move(rule.nodes));
    g.weights.push_back(std::move(rule.weights));
  }
  return g;
}

template <class G>
cplx integrate(const Grid& grid, std::size_t register_size, bool par, G&& g) {
  auto lifted = [&](std::span<const double> local) {
    std::vector<double> x(register_size, 0.0);
    for (std::size_t i = 0; i < grid.dims.size(); ++i) x[grid.dims[i]] = local[i];
    return g(std::span<const double>(x));
  };
  return par ? parallel::grid_sum(grid.nodes, grid.weights, lifted)
             : serial::grid_sum(grid.nodes, grid.weights, lifted);
}

void apply_single(GaussianWave& w, const GaussianOp& op) {
  std::visit(overloaded{
                 [&](const Xdisp& o) { w.displace(o.s); },
                 [&](const ShearP& o) { w.shear_p(o.s); },
                 [&](const Squeeze& o) { w.squeeze(o.s); },
                 [&](const Rotate& o) {
                   if (auto n = pi_multiple(o.s)) {
                     if (*n % 2 != 0) w.reflect();
                     return;
                   }
                   // Gaussian ops with equal phase-space matrices agree up to
                   // a global phase.
                   for (const auto& step : rotation_steps(o.mode, o.s)) {
                     if (const auto* q = std::get_if<ShearQ>(&step)) {
                       w.multiply_phase(q->s / 2.0, 0.0, 0.0);
                     } else {
                       apply_single(w, step);
                     }
                   }
                 },
                 [](const auto&) {
                   throw HyperforgeError(ErrorCode::kUnsupportedOp, "not a single-mode Gaussian");
                 },
             },
             op);
}

GaussianWave conditioned_wave(double r, const std::vector<double>& c) {
  if (c.size() > 3) {
    throw HyperforgeError(ErrorCode::kUnsupportedDegree,
                          "conditioned backend needs degree <= 2 in the acted mode; use the dense "
                          "backend");
  }
  GaussianWave w = GaussianWave::squeezed(r);
  w.multiply_phase(c.size() > 2 ? c[2] : 0.0, c.size() > 1 ? c[1] : 0.0, c[0]);
  return w;
}

double conditioned_once(const GaussianOp& op, const PhasePolynomial& fb, const PhasePolynomial& fa,
                        const FockConfig& cfg, const VerifyOptions& opts, std::size_t nodes,
                        double window) {
  const std::size_t n = cfg.modes.size();
  CompiledPoly cb(fb, cfg.modes);
  CompiledPoly ca(fa, cfg.modes);
  const bool par = cfg.parallel;

  if (is_diagonal(op)) {
    PhasePolynomial delta = fb + diagonal_phase(op) - fa;
    CompiledPoly cd(delta, cfg.modes);
    Grid grid = spectator_grid(cfg, mentioned(cfg, {&delta}, std::nullopt), nodes);
    cplx amp = integrate(grid, n, par, [&](std::span<const double> x) {
      return std::polar(1.0, cd(x));
    });
    return std::norm(amp);
  }

  if (const auto* mq = std::get_if<MeasureQ>(&op)) {
    std::size_t a = cfg.index_of(mq->mode);
    Grid grid = spectator_grid(cfg, mentioned(cfg, {&fb, &fa}, a), nodes);
    // Weight on q_a: |window * psi_a|^2 normalized, a Gaussian.
    double va = variance_of(cfg, mq->mode);
    double vw = window * window;
    double mean = mq->m * va / (va + vw);
    double var = va * vw / (va + vw);
    auto qa = normal_rule(nodes, mean, var);
    double total = 0.0;
    for (std::size_t i = 0; i < qa.nodes.size(); ++i) {
      double q = qa.nodes[i];
      cplx amp = integrate(grid, n, par, [&](std::span<const double> x) {
        std::vector<double> full(x.begin(), x.end());
        full[a] = q;
        return std::polar(1.0, cb(full) - ca(x));
      });
      total += qa.weights[i] * std::norm(amp);
    }
    return total;
  }

  if (std::holds_alternative<MeasureP>(op)) {
    throw HyperforgeError(ErrorCode::kUnsupportedOp,
                          "a momentum measurement has no polynomial-phase prediction");
  }

  const ModeId am = op_modes(op).front();
  std::size_t a = cfg.index_of(am);
  const double r_act = cfg.r(am);
  const double r_pred = predicted_r(op, cfg, opts, am);
  Grid grid = spectator_grid(cfg, mentioned(cfg, {&fb, &fa}, a), nodes);
  cplx amp = integrate(grid, n, par, [&](std::span<const double> x) {
    std::vector<double> c;
    cb.slice(a, x, c);
    GaussianWave act = conditioned_wave(r_act, c);
    apply_single(act, op);
    ca.slice(a, x, c);
    GaussianWave pred = conditioned_wave(r_pred, c);
    return overlap(pred, act);
  });
  return std::norm(amp);
}

VerifyResult conditioned(const GaussianOp& op, const PhasePolynomial& fb,
                         const PhasePolynomial& fa, const FockConfig& cfg,
                         const VerifyOptions& opts) {
  VerifyResult res;
  res.backend = Backend::kConditioned;
  const std::size_t coarse = std::max<std::size_t>(8, opts.nodes * 3 / 4);
  if (std::holds_alternative<MeasureQ>(op)) {
    // Richardson in sigma^2 from windows sigma and sigma/2.
    double s1 = opts.window_sigma;
    double s2 = s1 / 2.0;
    double f1 = conditioned_once(op, fb, fa, cfg, opts, opts.nodes, s1);
    double f2 = conditioned_once(op, fb, fa, cfg, opts, opts.nodes, s2);
    res.fidelity = (f2 * s1 * s1 - f1 * s2 * s2) / (s1 * s1 - s2 * s2);
    res.error_estimate = std::abs(res.fidelity - f2);
    return res;
  }
  res.fidelity = conditioned_once(op, fb, fa, cfg, opts, opts.nodes, opts.window_sigma);
  double rough = conditioned_once(op, fb, fa, cfg, opts, coarse, opts.window_sigma);
  res.error_estimate = std::abs(res.fidelity - rough);
  return res;
}

VerifyResult dense(const GaussianOp& op, const PhasePolynomial& fb, const PhasePolynomial& fa,
                   const FockConfig& cfg, const VerifyOptions& opts) {
  VerifyResult res;
  res.backend = Backend::kDense;
  FockState start = apply_phase_unitary(prepare_squeezed_vacuum(cfg), fb);

  if (const auto* mq = std::get_if<MeasureQ>(&op)) {
    FockConfig rest = cfg;
    std::erase(rest.modes, mq->mode);
    FockState pred = apply_phase_unitary(prepare_squeezed_vacuum(rest), fa);
    double s1 = opts.window_sigma;
    double s2 = s1 / 2.0;
    FockState a1 = apply_gaussian_numeric(start, op, s1);
    FockState a2 = apply_gaussian_numeric(start, op, s2);
    double f1 = reduced_fidelity(a1, mq->mode, pred);
    double f2 = reduced_fidelity(a2, mq->mode, pred);
    res.fidelity = (f2 * s1 * s1 - f1 * s2 * s2) / (s1 * s1 - s2 * s2);
    res.error_estimate = std::abs(res.fidelity - f2);
    res.leakage = std::max({a1.leakage, a2.leakage, pred.leakage});
    return res;
  }
  if (std::holds_alternative<MeasureP>(op)) {
    throw HyperforgeError(ErrorCode::kUnsupportedOp,
                          "a momentum measurement has no polynomial-phase prediction");
  }

  FockConfig pcfg = cfg;
  if (const auto* sq = std::get_if<Squeeze>(&op); sq && opts.track_squeezing) {
    pcfg.squeezing[sq->mode] = predicted_r(op, cfg, opts, sq->mode);
  }
  FockState actual = apply_gaussian_numeric(std::move(start), op, opts.window_sigma);
  FockState pred = apply_phase_unitary(prepare_squeezed_vacuum(pcfg), fa);
  res.fidelity = fidelity(pred, actual);
  res.leakage = std::max(actual.leakage, pred.leakage);
  res.error_estimate = res.leakage;
  return res;
}

}  // namespace

std::string_view backend_name(Backend b) {
  return b == Backend::kConditioned ? "conditioned" : "dense";
}

VerifyResult verify_rule(const GaussianOp& op, const PhasePolynomial& f_before,
                         const PhasePolynomial& f_after, const FockConfig& cfg,
                         const VerifyOptions& opts) {
  for (const auto& m : op_modes(op)) (void)cfg.index_of(m);
  return opts.backend == Backend::kConditioned ? conditioned(op, f_before, f_after, cfg, opts)
                                               : dense(op, f_before, f_after, cfg, opts);
}

std::optional<double> formula_prediction(const GaussianOp& op, const FockConfig& cfg,
                                         const VerifyOptions& opts) {
  return std::visit(
      overloaded{
          [&](const Xdisp& o) -> std::optional<double> {
            return std::exp(-0.5 * o.s * o.s * std::exp(-2.0 * cfg.r(o.mode)));
          },
          [&](const Squeeze& o) -> std::optional<double> {
            return opts.track_squeezing ? 1.0 : 1.0 / std::cosh(o.s);
          },
          [](const Rotate& o) -> std::optional<double> {
            if (pi_multiple(o.s)) return 1.0;
            return std::nullopt;
          },
          [](const ShearP&) -> std::optional<double> { return std::nullopt; },
          [](const MeasureP&) -> std::optional<double> { return std::nullopt; },
          [](const auto&) -> std::optional<double> { return 1.0; },
      },
      op);
}

double verify_cubic_identity(const FockState& test_state, CubicForm form, double gamma) {
  auto factors = form == CubicForm::kOuter ? cubic_outer_sequence(gamma)
                                           : cubic_phase_sequence(gamma);
  FockState seq = test_state;
  for (const auto& f : factors) {
    if (f.symbolic()) {
      PhasePolynomial p;
      p.add_term(f.monomial, f.weight);
      seq = apply_phase_unitary(std::move(seq), p);
    } else {
      seq = apply_qp_coupling(std::move(seq), f.modes[0], f.modes[1], f.weight);
    }
  }
  PhasePolynomial cubic;
  cubic.add_term(Monomial::power(ModeId("A"), 3), gamma);
  FockState direct = apply_phase_unitary(test_state, cubic);
  return fidelity(direct, seq);
}

}  // namespace hyperforge::oracle
