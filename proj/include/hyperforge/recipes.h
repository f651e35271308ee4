#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperforge/engine.h"

namespace hyperforge {

struct Recipe {
  std::string name;
  std::vector<ModeId> modes;
  PhasePolynomial input;  // phase the ops are meant to act on
  std::vector<GaussianOp> ops;
  PhasePolynomial target_description;
  std::vector<std::string> assumptions;
};

EngineState replay(const Recipe& r);

// replay(r).phase - target; empty for a correct recipe.
PhasePolynomial leftover_terms(const Recipe& r);

// Gaussian-only emulation of a Toffoli C_{B,C,D}. Input shape: {A*B*C: u,
// A*D: w}; output {A*B*C: u, B*C*D: s*u*w}. The closing position shear on D
// is found by replaying the first three steps.
Recipe toffoli_recipe(const PhasePolynomial& input, const ModeId& ancilla,
                      const std::pair<ModeId, ModeId>& controls, const ModeId& target,
                      double s = 1.0);
// Same with input {A*B*C: 1, A*D: w}.
Recipe toffoli_recipe(const ModeId& ancilla, const std::pair<ModeId, ModeId>& controls,
                      const ModeId& target, double w, double s = 1.0);

// m three-body edges {B,C,D_i} from {A*B*C: 1} plus {A*D_i: 1}. With
// paper_literal the pairwise D_i*D_j cleanup gates are left out and the
// recipe's target still names the intended state, so leftover_terms reports
// what the literal sequence leaves behind.
Recipe multi_target_recipe(const PhasePolynomial& input, const ModeId& ancilla,
                           const std::pair<ModeId, ModeId>& controls,
                           const std::vector<ModeId>& targets, bool paper_literal = false);
Recipe multi_target_recipe(const ModeId& ancilla, const std::pair<ModeId, ModeId>& controls,
                           const std::vector<ModeId>& targets, bool paper_literal = false);

// Five-mode demo: two 3rd-order edges sharing A become a 4th-order edge.
Recipe order_raise_demo();

// One factor of the cubic-phase decomposition. kPhase factors are
// exp(i weight * monomial) and can be handled symbolically; kQPCoupling
// factors are exp(i weight * q_{modes[0]} p_{modes[1]}) and exist only in
// the numerical oracle.
struct CubicFactor {
  enum class Kind { kPhase, kQPCoupling };
  Kind kind;
  std::vector<ModeId> modes;
  Monomial monomial;  // kPhase only
  double weight;

  bool symbolic() const { return kind == Kind::kPhase; }
};

// exp(i gamma q_A^3) on modes A, C as the four-factor commutator, in
// application order.
std::vector<CubicFactor> cubic_outer_sequence(double gamma = 1.0);
// Fully expanded ten-factor form on A, B, C: every q_A^2 q_C phase replaced
// by its own commutator of three-body phases. Application order.
std::vector<CubicFactor> cubic_phase_sequence(double gamma = 1.0);

}  // namespace hyperforge
