#include "hyperforge/recipes.h"

#include <gtest/gtest.h>

#include "hyperforge/errors.h"
#include "hyperforge/hypergraph.h"

namespace hyperforge {
namespace {

using P = PhasePolynomial;
using namespace hyperforge::literals;
constexpr double kEps = 1e-12;

bool same_op(const GaussianOp& x, const GaussianOp& y) {
  return op_name(x) == op_name(y) && op_modes(x) == op_modes(y) &&
         std::abs(op_param(x) - op_param(y)) <= kEps;
}

TEST(Toffoli, FourModeInstance) {
  auto r = toffoli_recipe("A"_m, {"B"_m, "C"_m}, "D"_m, 2.0);
  std::vector<GaussianOp> expect{ShearP{"A"_m, 1.0}, make_cphase({"A"_m, "D"_m}, -2.0),
                                 ShearP{"A"_m, -1.0}, ShearQ{"D"_m, -4.0}};
  ASSERT_EQ(r.ops.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_TRUE(same_op(r.ops[i], expect[i])) << i;

  auto st = replay(r);
  EXPECT_TRUE(poly_equal(st.phase, P::from_terms({{"A*B*C", 1.0}, {"B*C*D", 2.0}}), kEps));
  EXPECT_TRUE(poly_equal(st.phase, r.target_description, kEps));
  EXPECT_TRUE(decompose_graph(st.phase).is_standard());
}

TEST(Toffoli, IntermediateAfterFirstShear) {
  auto r = toffoli_recipe("A"_m, {"B"_m, "C"_m}, "D"_m, 2.0);
  auto st = apply_op(make_state(r.modes, r.input), r.ops[0]);
  for (auto [m, c] : {std::pair{"B^2*C^2", 0.5}, {"D^2", 2.0}, {"B*C*D", 2.0}}) {
    EXPECT_NEAR(st.phase.coefficient(Monomial::parse(m)), c, kEps) << m;
  }
}

TEST(Toffoli, GeneralWeights) {
  auto r = toffoli_recipe("A"_m, {"B"_m, "C"_m}, "D"_m, 1.0);
  EXPECT_TRUE(poly_equal(replay(r).phase, P::from_terms({{"A*B*C", 1.0}, {"B*C*D", 1.0}}), kEps));
  auto input = P::from_terms({{"A*B*C", 0.7}, {"A*D", -1.3}});
  auto g = toffoli_recipe(input, "A"_m, {"B"_m, "C"_m}, "D"_m, 0.4);
  EXPECT_TRUE(poly_equal(replay(g).phase,
                         P::from_terms({{"A*B*C", 0.7}, {"B*C*D", 0.4 * 0.7 * -1.3}}), kEps));
  EXPECT_TRUE(leftover_terms(g).is_zero());
}

TEST(Toffoli, ShapeMismatch) {
  auto bad = P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2", 1.0}});
  try {
    toffoli_recipe(bad, "A"_m, {"B"_m, "C"_m}, "D"_m);
    FAIL();
  } catch (const HyperforgeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  EXPECT_THROW(toffoli_recipe(P::from_terms({{"A*B*C", 1.0}}), "A"_m, {"B"_m, "C"_m}, "D"_m),
               HyperforgeError);
}

std::vector<ModeId> targets(int m) {
  std::vector<ModeId> out;
  for (int i = 1; i <= m; ++i) out.emplace_back("D" + std::to_string(i));
  return out;
}

TEST(MultiTarget, OneTargetMatchesToffoli) {
  auto mt = multi_target_recipe("A"_m, {"B"_m, "C"_m}, {"D"_m});
  auto tf = toffoli_recipe("A"_m, {"B"_m, "C"_m}, "D"_m, 1.0);
  ASSERT_EQ(mt.ops.size(), tf.ops.size());
  for (std::size_t i = 0; i < mt.ops.size(); ++i) EXPECT_TRUE(same_op(mt.ops[i], tf.ops[i])) << i;
}

TEST(MultiTarget, TwoTargetsNeedCrossCleanup) {
  auto r = multi_target_recipe("A"_m, {"B"_m, "C"_m}, targets(2));
  auto st = apply_op(make_state(r.modes, r.input), r.ops[0]);
  EXPECT_NEAR(st.phase.coefficient(Monomial::parse("D1*D2")), 1.0, kEps);
  EXPECT_TRUE(same_op(r.ops.back(), make_cphase({"D1"_m, "D2"_m}, -1.0)));
  EXPECT_TRUE(leftover_terms(r).is_zero());
}

TEST(MultiTarget, ThreeTargets) {
  auto r = multi_target_recipe("A"_m, {"B"_m, "C"_m}, targets(3));
  auto expect = P::from_terms({{"A*B*C", 1.0}, {"B*C*D1", 1.0}, {"B*C*D2", 1.0}, {"B*C*D3", 1.0}});
  EXPECT_TRUE(poly_equal(replay(r).phase, expect, kEps));
  EXPECT_TRUE(poly_equal(r.target_description, expect, kEps));
}

TEST(MultiTarget, LiteralLeftover) {
  auto r = multi_target_recipe("A"_m, {"B"_m, "C"_m}, targets(2), true);
  EXPECT_EQ(leftover_terms(r), P::from_terms({{"D1*D2", 1.0}}));
  EXPECT_TRUE(leftover_terms(multi_target_recipe("A"_m, {"B"_m, "C"_m}, targets(1), true)).is_zero());
}

TEST(MultiTarget, ShapeMismatch) {
  EXPECT_THROW(multi_target_recipe(P::from_terms({{"A*B*C", 1.0}}), "A"_m, {"B"_m, "C"_m},
                                   targets(2)),
               HyperforgeError);
}

TEST(OrderRaise, MatchesTarget) {
  auto r = order_raise_demo();
  auto st = replay(r);
  EXPECT_TRUE(poly_equal(st.phase, r.target_description, kEps));
  EXPECT_EQ(decompose_graph(st.phase).order, 4u);
  Recipe without = r;
  without.ops.pop_back();
  EXPECT_EQ(decompose_graph(replay(without).phase).order, 3u);
}

TEST(Cubic, SequenceStructure) {
  auto seq = cubic_phase_sequence();
  ASSERT_EQ(seq.size(), 10u);
  int oracle_only = 0;
  double qp_total = 0.0;
  for (const auto& f : seq) {
    if (!f.symbolic()) {
      ++oracle_only;
      qp_total += f.weight;
    } else {
      EXPECT_TRUE(f.monomial.is_multilinear());
      EXPECT_EQ(f.monomial.degree(), 3);
    }
  }
  EXPECT_EQ(oracle_only, 6);
  EXPECT_EQ(qp_total, 0.0);
  // Written product starts with exp(i q_A p_C); application order is reversed.
  EXPECT_EQ(seq.back().kind, CubicFactor::Kind::kQPCoupling);
  EXPECT_EQ(seq.back().modes, (std::vector<ModeId>{"A"_m, "C"_m}));
  EXPECT_EQ(cubic_outer_sequence().size(), 4u);
}

TEST(Cubic, OracleOnlyFactorsPairUp) {
  auto seq = cubic_phase_sequence(0.5);
  std::map<std::vector<ModeId>, double> sums;
  for (const auto& f : seq) {
    if (!f.symbolic()) sums[f.modes] += f.weight;
  }
  for (const auto& [modes, total] : sums) EXPECT_EQ(total, 0.0);
}

}  // namespace
}  // namespace hyperforge
