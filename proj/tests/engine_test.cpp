#include "hyperforge/engine.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hyperforge/errors.h"
#include "hyperforge/hypergraph.h"

namespace hyperforge {
namespace {

using P = PhasePolynomial;
using namespace hyperforge::literals;
constexpr double kEps = 1e-12;
constexpr double kPi = std::numbers::pi;

EngineState seed_state() {
  return make_state({"A"_m, "B"_m, "C"_m, "D"_m}, P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}}));
}

#define EXPECT_PHASE(st, ...) EXPECT_TRUE(poly_equal((st).phase, P::from_terms(__VA_ARGS__), kEps)) \
    << (st).phase.to_text()

template <class F>
void expect_code(F&& f, ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << error_code_name(code);
  } catch (const HyperforgeError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Engine, MakeStateValidates) {
  expect_code([] { make_state({"A"_m, "A"_m}); }, ErrorCode::kInvalidArgument);
  expect_code([] { make_state({"A"_m}, P::from_terms({{"B", 1.0}})); }, ErrorCode::kUnknownMode);
}

TEST(Engine, ZDisplacement) {
  EXPECT_PHASE(apply_z(seed_state(), "B"_m, -2.0), {{"A*B*C", 1.0}, {"A*D", 2.0}, {"B", -2.0}});
  EXPECT_EQ(apply_z(seed_state(), "A"_m, 0.0).phase, seed_state().phase);
  auto st = apply_z(apply_z(make_state({"A"_m}), "A"_m, 1.0), "A"_m, 1.0);
  EXPECT_PHASE(st, {{"A", 2.0}});
}

TEST(Engine, XDisplacement) {
  EXPECT_PHASE(apply_x(seed_state(), "A"_m, 1.0),
               {{"A*B*C", 1.0}, {"A*D", 2.0}, {"B*C", -1.0}, {"D", -2.0}});
  auto back = apply_x(apply_x(seed_state(), "A"_m, 0.7), "A"_m, -0.7);
  EXPECT_TRUE(poly_equal(back.phase, seed_state().phase, kEps));
}

TEST(Engine, ShearQ) {
  EXPECT_PHASE(apply_shear_q(seed_state(), "B"_m, 2.0), {{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2", 1.0}});
  EXPECT_EQ(apply_shear_q(seed_state(), "B"_m, 0.0).phase, seed_state().phase);
  auto st = make_state({"D"_m}, P::from_terms({{"D^2", 2.0}}));
  EXPECT_TRUE(apply_shear_q(st, "D"_m, -4.0).phase.is_zero());
}

TEST(Engine, ShearP) {
  EXPECT_PHASE(apply_shear_p(seed_state(), "A"_m, 1.0),
               {{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2*C^2", 0.5}, {"D^2", 2.0}, {"B*C*D", 2.0}});
  auto two_triangles = make_state({"A"_m, "B"_m, "C"_m, "D"_m, "E"_m},
                         P::from_terms({{"A*B*C", 1.0}, {"A*D*E", 1.0}}));
  EXPECT_PHASE(apply_shear_p(two_triangles, "A"_m, 1.0), {{"A*B*C", 1.0},
                                                  {"A*D*E", 1.0},
                                                  {"B^2*C^2", 0.5},
                                                  {"D^2*E^2", 0.5},
                                                  {"B*C*D*E", 1.0}});
  auto deco = make_state({"A"_m}, P::from_terms({{"A^2", 1.0}}));
  expect_code([&] { apply_shear_p(deco, "A"_m, 0.3); }, ErrorCode::kUnsupportedDegree);
}

TEST(Engine, Squeeze) {
  double e1 = std::exp(-1.0);
  EXPECT_PHASE(apply_squeeze(seed_state(), "A"_m, 1.0), {{"A*B*C", e1}, {"A*D", 2.0 * e1}});
  EXPECT_EQ(apply_squeeze(seed_state(), "A"_m, 0.0).phase, seed_state().phase);
  auto deco = make_state({"A"_m}, P::from_terms({{"A^2", 1.0}}));
  EXPECT_PHASE(apply_squeeze(deco, "A"_m, 0.4), {{"A^2", std::exp(-0.8)}});
}

TEST(Engine, RotationMultiplesOfPi) {
  EXPECT_PHASE(apply_rotation(seed_state(), "D"_m, kPi), {{"A*B*C", 1.0}, {"A*D", -2.0}});
  EXPECT_PHASE(apply_rotation(seed_state(), "D"_m, 2.0 * kPi), {{"A*B*C", 1.0}, {"A*D", 2.0}});
  EXPECT_PHASE(apply_rotation(seed_state(), "D"_m, -3.0 * kPi), {{"A*B*C", 1.0}, {"A*D", -2.0}});
  auto cubic = make_state({"A"_m}, P::from_terms({{"A^3", 1.0}, {"A^2", 1.0}}));
  EXPECT_PHASE(apply_rotation(cubic, "A"_m, kPi), {{"A^3", -1.0}, {"A^2", 1.0}});
}

TEST(Engine, RotationFourierAndGeneral) {
  expect_code([] { apply_rotation(seed_state(), "A"_m, kPi / 2.0); }, ErrorCode::kFourierUnsupported);
  expect_code([] { apply_rotation(seed_state(), "A"_m, -1.5 * kPi); }, ErrorCode::kFourierUnsupported);
  // The position shear deposits A^2, so the momentum shear must refuse,
  // even for a mode with no edges.
  expect_code([] { apply_rotation(seed_state(), "A"_m, 0.3); }, ErrorCode::kUnsupportedDegree);
  expect_code([] { apply_rotation(make_state({"A"_m}), "A"_m, 0.3); }, ErrorCode::kUnsupportedDegree);
}

TEST(Engine, RotationSteps) {
  auto steps = rotation_steps("A"_m, kPi / 3.0);
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_NEAR(std::get<ShearQ>(steps[0]).s, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(std::get<Squeeze>(steps[1]).s, std::log(2.0), 1e-12);
  EXPECT_NEAR(std::get<ShearP>(steps[2]).s, std::sqrt(3.0), 1e-12);
  auto flipped = rotation_steps("A"_m, 2.5);
  ASSERT_EQ(flipped.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<Rotate>(flipped[0]));
}

TEST(Engine, CPhase) {
  EXPECT_PHASE(apply_cphase(seed_state(), {"A"_m, "D"_m}, 0.5), {{"A*B*C", 1.0}, {"A*D", 2.5}});
  EXPECT_PHASE(apply_cphase(seed_state(), {"D"_m, "A"_m}, -2.0), {{"A*B*C", 1.0}});
  auto st = apply_cphase(make_state({"A"_m, "B"_m, "C"_m}), {"A"_m, "B"_m, "C"_m}, 1.0);
  EXPECT_PHASE(st, {{"A*B*C", 1.0}});
  expect_code([] { apply_cphase(seed_state(), {"A"_m, "Z"_m}, 1.0); }, ErrorCode::kUnknownMode);
}

TEST(Engine, MeasureQ) {
  auto st = measure_q(seed_state(), "A"_m, 3.0);
  EXPECT_PHASE(st, {{"B*C", 3.0}, {"D", 6.0}});
  EXPECT_EQ(st.active_modes, (std::vector<ModeId>{"B"_m, "C"_m, "D"_m}));
  ASSERT_EQ(st.measurements.size(), 1u);
  EXPECT_EQ(st.measurements[0], (MeasurementRecord{"A"_m, Basis::kQ, 3.0}));

  EXPECT_TRUE(measure_q(seed_state(), "A"_m, 0.0).phase.is_zero());

  auto ab = make_state({"A"_m, "B"_m}, P::from_terms({{"A*B", 1.0}, {"B", 2.0}}));
  auto m = measure_q(ab, "B"_m, 1.0);
  EXPECT_PHASE(m, {{"A", 1.0}}, 2.0);
  EXPECT_DOUBLE_EQ(m.phase.constant(), 2.0);

  expect_code([&] { apply_z(st, "A"_m, 1.0); }, ErrorCode::kUnknownMode);
}

TEST(Engine, MeasureP) {
  auto st = measure_p(seed_state(), "A"_m, 0.0);
  ASSERT_TRUE(st.terminated());
  EXPECT_EQ(st.terminal_residual->h, P::from_terms({{"B*C", 1.0}, {"D", 2.0}}));
  EXPECT_TRUE(st.terminal_residual->tail.is_zero());
  EXPECT_FALSE(st.is_active("A"_m));
  expect_code([&] { apply_z(st, "B"_m, 1.0); }, ErrorCode::kStateTerminated);

  auto single = measure_p(make_state({"A"_m}), "A"_m, 0.7);
  EXPECT_TRUE(single.terminal_residual->h.is_zero());
  EXPECT_TRUE(single.terminal_residual->tail.is_zero());

  auto deco = make_state({"A"_m}, P::from_terms({{"A^2", 1.0}}));
  expect_code([&] { measure_p(deco, "A"_m, 0.0); }, ErrorCode::kUnsupportedDegree);
}

TEST(Engine, FailedOpLeavesStateUntouched) {
  auto st = seed_state();
  auto before = state_hash(st);
  EXPECT_THROW(apply_rotation(st, "A"_m, 0.3), HyperforgeError);
  EXPECT_EQ(state_hash(st), before);
}

TEST(Engine, CommuteThroughPullLeft) {
  auto f = P::from_terms({{"B*C", -1.0}});
  EXPECT_EQ(commute_through(Xdisp{"A"_m, 1.0}, f), f);
  auto g = commute_through(Xdisp{"A"_m, 0.5}, P::from_terms({{"A^2", 2.0}}));
  EXPECT_TRUE(poly_equal(g, P::from_terms({{"A^2", 2.0}, {"A", -2.0}}, 0.5), kEps));
  EXPECT_DOUBLE_EQ(g.constant(), 0.5);
  auto abc = P::from_terms({{"A*B*C", 0.3}});
  EXPECT_TRUE(poly_equal(commute_through(Squeeze{"A"_m, 0.2}, abc),
                         P::from_terms({{"A*B*C", 0.3 * std::exp(-0.2)}}), kEps));
  EXPECT_EQ(commute_through(Zdisp{"A"_m, 1.0}, abc), abc);
  EXPECT_EQ(commute_through(ShearQ{"A"_m, 1.0}, abc), abc);
  EXPECT_EQ(commute_through(make_cphase({"A"_m, "B"_m}, 1.0), abc), abc);
  EXPECT_TRUE(poly_equal(commute_through(Rotate{"A"_m, kPi}, abc),
                         P::from_terms({{"A*B*C", -0.3}}), kEps));
}

TEST(Engine, CommuteThroughPushRight) {
  auto abc = P::from_terms({{"A*B*C", 0.3}});
  EXPECT_TRUE(poly_equal(commute_through(Squeeze{"A"_m, 0.2}, abc, CommuteDirection::kPushRight),
                         P::from_terms({{"A*B*C", 0.3 * std::exp(0.2)}}), kEps));
  EXPECT_TRUE(poly_equal(commute_through(Xdisp{"A"_m, 1.0}, abc, CommuteDirection::kPushRight),
                         P::from_terms({{"A*B*C", 0.3}, {"B*C", 0.3}}), kEps));
}

TEST(Engine, CommuteThroughRejectsMomentumRows) {
  auto f = P::from_terms({{"A", 1.0}});
  expect_code([&] { commute_through(ShearP{"A"_m, 1.0}, f); }, ErrorCode::kUnsupportedCommutation);
  expect_code([&] { commute_through(Rotate{"A"_m, 0.4}, f); }, ErrorCode::kUnsupportedCommutation);
  expect_code([&] { commute_through(MeasureQ{"A"_m, 0.0}, f); }, ErrorCode::kUnsupportedCommutation);
}

TEST(Engine, CircuitReplayAndHistory) {
  std::vector<GaussianOp> ops{ShearP{"A"_m, 1.0}, make_cphase({"A"_m, "D"_m}, -2.0),
                              ShearP{"A"_m, -1.0}, ShearQ{"D"_m, -4.0}};
  auto st = apply_circuit(seed_state(), ops);
  EXPECT_PHASE(st, {{"A*B*C", 1.0}, {"B*C*D", 2.0}});
  ASSERT_EQ(st.history.size(), 4u);
  EXPECT_EQ(st.history.back().hash, state_hash(st));
  auto again = apply_circuit(seed_state(), ops);
  EXPECT_EQ(state_hash(again), state_hash(st));
  EXPECT_EQ(apply_circuit(seed_state(), {}).phase, seed_state().phase);
}

TEST(Engine, CircuitErrorCarriesStep) {
  std::vector<GaussianOp> ops{ShearQ{"A"_m, 1.0}, Zdisp{"B"_m, 1.0}, ShearP{"A"_m, 1.0}};
  try {
    apply_circuit(seed_state(), ops);
    FAIL();
  } catch (const CircuitError& e) {
    EXPECT_EQ(e.step(), 2u);
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDegree);
  }
}

TEST(Engine, UndoRestoresHash) {
  auto st = seed_state();
  auto h0 = state_hash(st);
  auto one = apply_x(st, "A"_m, 1.0);
  EXPECT_NE(state_hash(one), h0);
  EXPECT_EQ(state_hash(undo(one)), h0);
  auto two = measure_p(one, "B"_m, 0.0);
  EXPECT_EQ(state_hash(undo(two)), state_hash(one));
  EXPECT_EQ(state_hash(undo(st)), h0);
}

TEST(Engine, HashIgnoresNothingVisible) {
  auto a = apply_z(seed_state(), "A"_m, 1.0);
  auto b = apply_z(seed_state(), "A"_m, 1.0 + 1e-9);
  EXPECT_NE(state_hash(a), state_hash(b));
}

}  // namespace
}  // namespace hyperforge
