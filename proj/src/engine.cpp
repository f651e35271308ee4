#include "hyperforge/engine.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperforge/errors.h"

namespace hyperforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;

void require_active(const EngineState& st, const ModeId& a) {
  if (!st.is_active(a)) {
    throw HyperforgeError(ErrorCode::kUnknownMode, "mode '" + a.str() + "' is not active");
  }
}

void require_open(const EngineState& st) {
  if (st.terminated()) {
    throw HyperforgeError(ErrorCode::kStateTerminated,
                          "state ended in a momentum measurement; no further ops accepted");
  }
}

void require_linear(const PhasePolynomial& f, const ModeId& a, const char* what) {
  int deg = f.degree_in(a);
  if (deg > 1) {
    throw HyperforgeError(ErrorCode::kUnsupportedDegree,
                          std::string(what) + " requires degree <= 1 in mode '" + a.str() +
                              "', found degree " + std::to_string(deg));
  }
}

void deactivate(EngineState& st, const ModeId& a) {
  std::erase(st.active_modes, a);
}

double parity(long long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Applies one primitive to st in place; history is handled by the caller.
void step(EngineState& st, const GaussianOp& op) {
  require_open(st);
  for (const auto& a : op_modes(op)) require_active(st, a);

  std::visit(
      overloaded{
          [&](const Zdisp& o) { st.phase.add_term(Monomial::power(o.mode, 1), o.s); },
          [&](const Xdisp& o) { st.phase = substitute_affine(st.phase, o.mode, 1.0, -o.s); },
          [&](const ShearQ& o) { st.phase.add_term(Monomial::power(o.mode, 2), o.s / 2.0); },
          [&](const ShearP& o) {
            require_linear(st.phase, o.mode, "momentum shearing");
            st.phase += square_half(partial_in(st.phase, o.mode).h, o.s);
          },
          [&](const Squeeze& o) {
            st.phase = substitute_affine(st.phase, o.mode, std::exp(-o.s), 0.0);
          },
          [&](const Rotate& o) {
            if (auto n = pi_multiple(o.s)) {
              st.phase = substitute_affine(st.phase, o.mode, parity(*n), 0.0);
              return;
            }
            for (const auto& sub : rotation_steps(o.mode, o.s)) step(st, sub);
          },
          [&](const CPhase& o) { st.phase.add_term(Monomial::multilinear(o.modes), o.t); },
          [&](const MeasureQ& o) {
            st.phase = substitute_affine(st.phase, o.mode, 0.0, o.m);
            deactivate(st, o.mode);
            st.measurements.push_back(MeasurementRecord{o.mode, Basis::kQ, o.m});
          },
          [&](const MeasureP& o) {
            require_linear(st.phase, o.mode, "momentum measurement");
            auto split = partial_in(st.phase, o.mode);
            deactivate(st, o.mode);
            st.measurements.push_back(MeasurementRecord{o.mode, Basis::kP, o.m});
            st.terminal_residual = PResidual{o.mode, o.m, std::move(split.h), std::move(split.g)};
            st.phase = PhasePolynomial(st.phase.prune_threshold());
          },
      },
      op);
}

}  // namespace

bool EngineState::is_active(const ModeId& a) const {
  return std::find(active_modes.begin(), active_modes.end(), a) != active_modes.end();
}

EngineState make_state(std::vector<ModeId> modes, PhasePolynomial phase) {
  auto sorted = modes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "mode labels must be unique");
  }
  for (const auto& m : phase.modes()) {
    if (!std::binary_search(sorted.begin(), sorted.end(), m)) {
      throw HyperforgeError(ErrorCode::kUnknownMode,
                            "initial phase mentions undeclared mode '" + m.str() + "'");
    }
  }
  EngineState st;
  st.active_modes = modes;
  st.phase = phase;
  st.initial_modes = std::move(modes);
  st.initial_phase = std::move(phase);
  return st;
}

std::optional<long long> pi_multiple(double s) {
  double n = std::round(s / kPi);
  if (std::abs(s - n * kPi) <= kAngleTolerance) return static_cast<long long>(n);
  return std::nullopt;
}

std::vector<GaussianOp> rotation_steps(const ModeId& a, double s) {
  if (auto n = pi_multiple(s)) return {Rotate{a, s}};
  double k = std::round(s / kPi - 0.5);
  if (std::abs(s - (k + 0.5) * kPi) <= kAngleTolerance) {
    throw HyperforgeError(ErrorCode::kFourierUnsupported,
                          "rotation by an odd multiple of pi/2 swaps quadratures");
  }
  std::vector<GaussianOp> out;
  double rest = s;
  if (std::cos(s) < 0.0) {
    out.push_back(Rotate{a, kPi});
    rest = s - kPi;
  }
  double t = std::tan(rest);
  double r = -std::log(std::cos(rest));
  out.push_back(ShearQ{a, t});
  out.push_back(Squeeze{a, r});
  out.push_back(ShearP{a, t});
  return out;
}

EngineState apply_op(EngineState st, const GaussianOp& op) {
  step(st, op);
  st.history.push_back(HistoryEntry{op, state_hash(st)});
  return st;
}

EngineState apply_circuit(EngineState st, std::span<const GaussianOp> ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      st = apply_op(std::move(st), ops[i]);
    } catch (const CircuitError&) {
      throw;
    } catch (const HyperforgeError& e) {
      throw CircuitError(e.code(), i,
                         "step " + std::to_string(i) + " (" + format_op(ops[i]) + "): " + e.what());
    }
  }
  return st;
}

EngineState apply_z(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), Zdisp{a, s});
}
EngineState apply_x(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), Xdisp{a, s});
}
EngineState apply_shear_q(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), ShearQ{a, s});
}
EngineState apply_shear_p(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), ShearP{a, s});
}
EngineState apply_squeeze(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), Squeeze{a, s});
}
EngineState apply_rotation(EngineState st, const ModeId& a, double s) {
  return apply_op(std::move(st), Rotate{a, s});
}
EngineState apply_cphase(EngineState st, std::vector<ModeId> e, double t) {
  return apply_op(std::move(st), make_cphase(std::move(e), t));
}
EngineState measure_q(EngineState st, const ModeId& a, double m) {
  return apply_op(std::move(st), MeasureQ{a, m});
}
EngineState measure_p(EngineState st, const ModeId& a, double m) {
  return apply_op(std::move(st), MeasureP{a, m});
}

EngineState undo(const EngineState& st) {
  if (st.history.empty()) return st;
  EngineState out = make_state(st.initial_modes, st.initial_phase);
  for (std::size_t i = 0; i + 1 < st.history.size(); ++i) {
    out = apply_op(std::move(out), st.history[i].op);
  }
  return out;
}

PhasePolynomial commute_through(const GaussianOp& op, const PhasePolynomial& f,
                                CommuteDirection dir) {
  const double sign = dir == CommuteDirection::kPullLeft ? 1.0 : -1.0;
  return std::visit(
      overloaded{
          [&](const Zdisp&) { return f; },
          [&](const ShearQ&) { return f; },
          [&](const CPhase&) { return f; },
          [&](const Xdisp& o) { return substitute_affine(f, o.mode, 1.0, -sign * o.s); },
          [&](const Squeeze& o) { return substitute_affine(f, o.mode, std::exp(-sign * o.s), 0.0); },
          [&](const Rotate& o) {
            auto n = pi_multiple(o.s);
            if (!n) {
              throw HyperforgeError(ErrorCode::kUnsupportedCommutation,
                                    "general rotation mixes momentum into the residual");
            }
            return substitute_affine(f, o.mode, parity(*n), 0.0);
          },
          [&](const ShearP&) -> PhasePolynomial {
            throw HyperforgeError(ErrorCode::kUnsupportedCommutation,
                                  "momentum shearing mixes momentum into the residual");
          },
          [&](const MeasureQ&) -> PhasePolynomial {
            throw HyperforgeError(ErrorCode::kUnsupportedCommutation,
                                  "measurements do not commute with residuals");
          },
          [&](const MeasureP&) -> PhasePolynomial {
            throw HyperforgeError(ErrorCode::kUnsupportedCommutation,
                                  "measurements do not commute with residuals");
          },
      },
      op);
}

std::string canonical_text(const EngineState& st) {
  std::string out = "modes";
  for (const auto& m : st.active_modes) out += ' ' + m.str();
  out += '\n';
  out += st.phase.to_text();
  for (const auto& r : st.measurements) {
    out += "measured " + r.mode.str() + (r.basis == Basis::kQ ? " q " : " p ") +
           format_double(r.outcome) + '\n';
  }
  if (st.terminal_residual) {
    out += "residual " + st.terminal_residual->mode.str() + ' ' +
           format_double(st.terminal_residual->outcome) + "\nh\n" +
           st.terminal_residual->h.to_text() + "tail\n" + st.terminal_residual->tail.to_text();
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t state_hash(const EngineState& st) { return fnv1a64(canonical_text(st)); }

}  // namespace hyperforge
