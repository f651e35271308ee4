#include "hyperforge/recipes.h"

#include <algorithm>
#include <cmath>

#include "hyperforge/errors.h"

namespace hyperforge {

namespace {

constexpr double kShapeTolerance = 1e-12;

Monomial edge(std::initializer_list<ModeId> modes) {
  return Monomial::multilinear(std::vector<ModeId>(modes));
}

// Reads the weight of `m` in `input` or raises ShapeMismatch.
double required_weight(const PhasePolynomial& input, const Monomial& m) {
  double w = input.coefficient(m);
  if (std::abs(w) <= kShapeTolerance) {
    throw HyperforgeError(ErrorCode::kShapeMismatch,
                          "input lacks the hyperedge " + m.to_string());
  }
  return w;
}

void require_only(const PhasePolynomial& input, const std::vector<Monomial>& allowed) {
  for (const auto& [m, c] : input.terms()) {
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
      throw HyperforgeError(ErrorCode::kShapeMismatch,
                            "input has unexpected term " + m.to_string());
    }
  }
}

std::vector<ModeId> collect_modes(std::vector<ModeId> modes) {
  std::sort(modes.begin(), modes.end());
  if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "recipe modes must be distinct");
  }
  return modes;
}

// Appends the shears and two-body phases that cancel whatever the replay of
// r.ops leaves on top of the target. Quadratic self terms come first.
void append_cancellation(Recipe& r, bool with_cross_terms) {
  PhasePolynomial extra = leftover_terms(r);
  std::vector<GaussianOp> shears;
  std::vector<GaussianOp> pairs;
  for (const auto& [m, c] : extra.terms()) {
    const auto& f = m.factors();
    if (f.size() == 1 && f[0].second == 2) {
      shears.push_back(ShearQ{f[0].first, -2.0 * c});
    } else if (m.is_multilinear() && f.size() == 2) {
      pairs.push_back(make_cphase(m.modes(), -c));
    } else {
      throw HyperforgeError(ErrorCode::kShapeMismatch,
                            "replay left an uncancellable term " + m.to_string());
    }
  }
  r.ops.insert(r.ops.end(), shears.begin(), shears.end());
  if (with_cross_terms) r.ops.insert(r.ops.end(), pairs.begin(), pairs.end());
}

}  // namespace

EngineState replay(const Recipe& r) {
  return apply_circuit(make_state(r.modes, r.input), r.ops);
}

PhasePolynomial leftover_terms(const Recipe& r) {
  PhasePolynomial out = replay(r).phase - r.target_description;
  PhasePolynomial clean(out.prune_threshold());  // global phase dropped
  for (const auto& [m, c] : out.terms()) {
    if (std::abs(c) > 1e-12) clean.add_term(m, c);
  }
  return clean;
}

Recipe toffoli_recipe(const PhasePolynomial& input, const ModeId& ancilla,
                      const std::pair<ModeId, ModeId>& controls, const ModeId& target, double s) {
  const auto& [b, c] = controls;
  Monomial abc = edge({ancilla, b, c});
  Monomial ad = edge({ancilla, target});
  require_only(input, {abc, ad});
  double u = required_weight(input, abc);
  double w = required_weight(input, ad);
  if (s == 0.0) throw HyperforgeError(ErrorCode::kInvalidArgument, "shear strength must be nonzero");

  Recipe r;
  r.name = "toffoli";
  r.modes = collect_modes({ancilla, b, c, target});
  r.input = input;
  r.ops = {ShearP{ancilla, s}, make_cphase({ancilla, target}, -w), ShearP{ancilla, -s}};
  r.target_description.add_term(abc, u).add_term(edge({b, c, target}), s * u * w);
  r.target_description.add_constant(input.constant());
  r.assumptions = {
      "input phase is {" + abc.to_string() + ", " + ad.to_string() + "} only",
      "closing position shear on " + target.str() + " solved by replay",
  };
  append_cancellation(r, true);
  return r;
}

Recipe toffoli_recipe(const ModeId& ancilla, const std::pair<ModeId, ModeId>& controls,
                      const ModeId& target, double w, double s) {
  PhasePolynomial input;
  input.add_term(edge({ancilla, controls.first, controls.second}), 1.0);
  input.add_term(edge({ancilla, target}), w);
  return toffoli_recipe(input, ancilla, controls, target, s);
}

Recipe multi_target_recipe(const PhasePolynomial& input, const ModeId& ancilla,
                           const std::pair<ModeId, ModeId>& controls,
                           const std::vector<ModeId>& targets, bool paper_literal) {
  if (targets.empty()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "need at least one target");
  }
  const auto& [b, c] = controls;
  Monomial abc = edge({ancilla, b, c});
  std::vector<Monomial> allowed{abc};
  for (const auto& d : targets) allowed.push_back(edge({ancilla, d}));
  require_only(input, allowed);
  double u = required_weight(input, abc);

  Recipe r;
  r.name = paper_literal ? "multi-target-literal" : "multi-target";
  std::vector<ModeId> modes{ancilla, b, c};
  modes.insert(modes.end(), targets.begin(), targets.end());
  r.modes = collect_modes(modes);
  r.input = input;
  r.target_description.add_term(abc, u);
  r.target_description.add_constant(input.constant());
  r.ops.push_back(ShearP{ancilla, 1.0});
  for (const auto& d : targets) {
    double w = required_weight(input, edge({ancilla, d}));
    r.ops.push_back(make_cphase({ancilla, d}, -w));
    r.target_description.add_term(edge({b, c, d}), u * w);
  }
  r.ops.push_back(ShearP{ancilla, -1.0});
  r.assumptions = {"input phase is {A*B*C} plus one {A*D_i} edge per target"};
  if (paper_literal) {
    r.assumptions.push_back("pairwise D_i*D_j cleanup omitted; see leftover terms");
  } else if (targets.size() > 1) {
    r.assumptions.push_back("pairwise D_i*D_j cross terms removed by two-body phases");
  }
  append_cancellation(r, !paper_literal);
  return r;
}

Recipe multi_target_recipe(const ModeId& ancilla, const std::pair<ModeId, ModeId>& controls,
                           const std::vector<ModeId>& targets, bool paper_literal) {
  PhasePolynomial input;
  input.add_term(edge({ancilla, controls.first, controls.second}), 1.0);
  for (const auto& d : targets) input.add_term(edge({ancilla, d}), 1.0);
  return multi_target_recipe(input, ancilla, controls, targets, paper_literal);
}

Recipe order_raise_demo() {
  ModeId a("A"), b("B"), c("C"), d("D"), e("E");
  Recipe r;
  r.name = "order-raise";
  r.modes = {a, b, c, d, e};
  r.ops = {make_cphase({a, b, c}, 1.0), make_cphase({a, d, e}, 1.0), ShearP{a, 1.0}};
  r.target_description = PhasePolynomial::from_terms(
      {{"A*B*C", 1.0}, {"A*D*E", 1.0}, {"B^2*C^2", 0.5}, {"D^2*E^2", 0.5}, {"B*C*D*E", 1.0}});
  r.assumptions = {"starts from five zero-momentum modes"};
  return r;
}

namespace {

CubicFactor qp(const ModeId& q_mode, const ModeId& p_mode, double w) {
  return CubicFactor{CubicFactor::Kind::kQPCoupling, {q_mode, p_mode}, Monomial{}, w};
}

CubicFactor phase(const Monomial& m, double w) {
  return CubicFactor{CubicFactor::Kind::kPhase, m.modes(), m, w};
}

// exp(i w q_A^2 q_C) = P_AB(1) T(w) P_AB(-1) T(-w), written left to right.
std::vector<CubicFactor> expanded_square(const ModeId& a, const ModeId& b, const ModeId& c,
                                         double w) {
  Monomial abc = edge({a, b, c});
  return {qp(a, b, 1.0), phase(abc, w), qp(a, b, -1.0), phase(abc, -w)};
}

}  // namespace

std::vector<CubicFactor> cubic_outer_sequence(double gamma) {
  ModeId a("A"), c("C");
  Monomial aac = Monomial::power(a, 2) * Monomial::power(c, 1);
  // exp(i g q_A^3) = P_AC(1) Q(g) P_AC(-1) Q(-g), written left to right.
  std::vector<CubicFactor> written{qp(a, c, 1.0), phase(aac, gamma), qp(a, c, -1.0),
                                   phase(aac, -gamma)};
  std::reverse(written.begin(), written.end());
  return written;
}

std::vector<CubicFactor> cubic_phase_sequence(double gamma) {
  ModeId a("A"), b("B"), c("C");
  std::vector<CubicFactor> written{qp(a, c, 1.0)};
  auto plus = expanded_square(a, b, c, gamma);
  written.insert(written.end(), plus.begin(), plus.end());
  written.push_back(qp(a, c, -1.0));
  auto minus = expanded_square(a, b, c, -gamma);
  written.insert(written.end(), minus.begin(), minus.end());
  std::reverse(written.begin(), written.end());
  return written;
}

}  // namespace hyperforge
