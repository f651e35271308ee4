#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperforge/gaussian_op.h"
#include "hyperforge/phase_poly.h"

namespace hyperforge {

enum class Basis { kQ, kP };

struct MeasurementRecord {
  ModeId mode;
  Basis basis;
  double outcome;
  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

// What is left after a momentum measurement of `mode` with outcome m:
// the integral over x of exp(-i m x) exp(i (x h + tail)). Not a hypergraph
// state; kept only for rendering and export.
struct PResidual {
  ModeId mode;
  double outcome;
  PhasePolynomial h;
  PhasePolynomial tail;
  friend bool operator==(const PResidual&, const PResidual&) = default;
};

struct HistoryEntry {
  GaussianOp op;
  std::uint64_t hash;  // state hash after the op
};

struct EngineState {
  std::vector<ModeId> active_modes;
  PhasePolynomial phase;
  std::vector<MeasurementRecord> measurements;
  std::optional<PResidual> terminal_residual;
  std::vector<HistoryEntry> history;

  // Starting point for replay and undo.
  std::vector<ModeId> initial_modes;
  PhasePolynomial initial_phase;

  bool terminated() const { return terminal_residual.has_value(); }
  bool is_active(const ModeId& a) const;
};

// Fresh state on `modes` (distinct) with an initial phase mentioning only
// those modes. The empty phase is the product of zero-momentum eigenstates.
EngineState make_state(std::vector<ModeId> modes, PhasePolynomial phase = {});

EngineState apply_z(EngineState st, const ModeId& a, double s);
EngineState apply_x(EngineState st, const ModeId& a, double s);
EngineState apply_shear_q(EngineState st, const ModeId& a, double s);
EngineState apply_shear_p(EngineState st, const ModeId& a, double s);
EngineState apply_squeeze(EngineState st, const ModeId& a, double s);
EngineState apply_rotation(EngineState st, const ModeId& a, double s);
EngineState apply_cphase(EngineState st, std::vector<ModeId> e, double t);
EngineState measure_q(EngineState st, const ModeId& a, double m);
EngineState measure_p(EngineState st, const ModeId& a, double m);

EngineState apply_op(EngineState st, const GaussianOp& op);
// Throws CircuitError carrying the index of the first failing op.
EngineState apply_circuit(EngineState st, std::span<const GaussianOp> ops);

// Drops the last history entry by replaying the rest from the initial state.
// No-op on an empty history.
EngineState undo(const EngineState& st);

// The op sequence applied for a rotation by s (application order). Multiples
// of pi map to a single Rotate; other angles to ShearQ, Squeeze, ShearP,
// preceded by Rotate(pi) when cos s < 0.
std::vector<GaussianOp> rotation_steps(const ModeId& a, double s);

// Angle tolerance for recognising multiples of pi and pi/2.
inline constexpr double kAngleTolerance = 1e-9;
// n if s is within kAngleTolerance of n*pi.
std::optional<long long> pi_multiple(double s);

enum class CommuteDirection {
  kPullLeft,   // op * exp(i f) = exp(i f') * op
  kPushRight,  // exp(i f) * op = op * exp(i f')
};

PhasePolynomial commute_through(const GaussianOp& op, const PhasePolynomial& f,
                                CommuteDirection dir = CommuteDirection::kPullLeft);

// Canonical text of modes, phase, measurements and residual; stable across
// runs and platforms. state_hash is its 64-bit FNV-1a digest.
std::string canonical_text(const EngineState& st);
std::uint64_t state_hash(const EngineState& st);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace hyperforge
