#include <cstdlib>
#include <numbers>

#include <gtest/gtest.h>

#include "hyperforge/errors.h"
#include "hyperforge/io/circuit_file.h"
#include "hyperforge/io/dot.h"
#include "hyperforge/io/report.h"
#include "hyperforge/recipes.h"

namespace hyperforge::io {
namespace {

using P = PhasePolynomial;
using namespace hyperforge::literals;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const HyperforgeError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

CircuitFile toffoli_file() {
  auto r = toffoli_recipe("A"_m, {"B"_m, "C"_m}, "D"_m, 2.0);
  return {kFormatVersion, r.modes, r.input, r.ops, json{{"recipe", r.name}}};
}

TEST(CircuitFile, CanonicalRoundTrip) {
  std::string text = serialize(toffoli_file());
  EXPECT_EQ(serialize(parse_circuit(text)), text);
  EXPECT_EQ(text.back(), '\n');
}

TEST(CircuitFile, ReplaysToffoli) {
  auto st = replay(parse_circuit(serialize(toffoli_file())));
  EXPECT_TRUE(poly_equal(st.phase, P::from_terms({{"A*B*C", 1.0}, {"B*C*D", 2.0}}), 1e-12));
}

TEST(CircuitFile, AcceptsHandWrittenInput) {
  auto c = parse_circuit(R"({"version": 1, "modes": ["A", "B"],
    "initial_phase": [{"monomial": {"A": 1, "B": 1}, "coeff": 1}, {"monomial": {}, "coeff": 0.5}],
    "ops": [{"op": "C", "modes": ["B", "A"], "params": {"t": -1}}, {"op": "Z", "mode": "A", "params": 2}]})");
  EXPECT_EQ(c.initial_phase, P::from_terms({{"A*B", 1.0}}, 0.5));
  ASSERT_EQ(c.ops.size(), 2u);
  EXPECT_EQ(std::get<CPhase>(c.ops[0]).modes, (std::vector<ModeId>{"A"_m, "B"_m}));
  EXPECT_EQ(replay(c).phase, P::from_terms({{"A", 2.0}}, 0.5));
  EXPECT_TRUE(c.metadata.is_object());
}

TEST(CircuitFile, Rejections) {
  EXPECT_EQ(code_of([] { parse_circuit("{"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { parse_circuit(R"({"modes": ["A"]})"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { parse_circuit(R"({"version": 2, "modes": ["A"]})"); }),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { parse_circuit(R"({"version": 1, "modes": ["A-"]})"); }),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] {
              parse_circuit(R"({"version": 1, "modes": ["A"], "initial_phase": [{"monomial": {"A": -1}, "coeff": 1}]})");
            }),
            ErrorCode::kMalformedInput);
  try {
    parse_circuit(R"({"version": 1, "modes": ["A"], "ops": [
      {"op": "Z", "mode": "A", "params": {"s": 1}}, {"op": "Fourier", "mode": "A", "params": {"s": 1}}]})");
    FAIL();
  } catch (const CircuitError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedOp);
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(CircuitFile, ReplayReportsStep) {
  CircuitFile c;
  c.modes = {"A"_m, "B"_m};
  c.initial_phase = P::from_terms({{"A*B", 1.0}});
  c.ops = {ShearQ{"A"_m, 1.0}, ShearP{"A"_m, 1.0}};
  try {
    replay(c);
    FAIL();
  } catch (const CircuitError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDegree);
    EXPECT_EQ(e.step(), 1u);
  }
  c.ops = {Zdisp{"Q"_m, 1.0}};
  EXPECT_EQ(code_of([&] { replay(c); }), ErrorCode::kUnknownMode);
}

TEST(CircuitFile, EmptyCircuitLeavesStateUnchanged) {
  CircuitFile c;
  c.modes = {"A"_m, "B"_m, "C"_m, "D"_m};
  c.initial_phase = P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}});
  auto st = replay(c);
  EXPECT_EQ(st.phase, c.initial_phase);
  EXPECT_EQ(state_hash(st), state_hash(make_state(c.modes, c.initial_phase)));
}

TEST(StateFile, RoundTrip) {
  auto st = make_state({"A"_m, "B"_m, "C"_m, "D"_m}, P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}}));
  st = apply_op(st, ShearP{"A"_m, 1.0});
  st = apply_op(st, MeasureQ{"B"_m, 0.25});
  std::string text = serialize_state(st);
  auto back = parse_state(text);
  EXPECT_EQ(canonical_text(back), canonical_text(st));
  EXPECT_EQ(back.history.size(), 2u);
  EXPECT_EQ(serialize_state(back), text);
}

TEST(StateFile, TamperedSnapshotRejected) {
  auto st = apply_op(make_state({"A"_m}, P::from_terms({{"A", 1.0}})), Zdisp{"A"_m, 1.0});
  json j = parse_json(serialize_state(st));
  j["snapshot"]["hash"] = "0000000000000000";
  EXPECT_EQ(code_of([&] { parse_state(j.dump()); }), ErrorCode::kMalformedInput);
}

TEST(Decomposition, JsonFields) {
  auto st = make_state({"A"_m, "B"_m, "C"_m, "D"_m},
                       P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2", 1.0}}, 0.5));
  json d = decomposition_to_json(st);
  EXPECT_EQ(d["order"], 3);
  EXPECT_EQ(d["edges"].size(), 2u);
  EXPECT_EQ(d["edges"][0]["modes"], json({"A", "B", "C"}));
  EXPECT_EQ(d["edges"][1]["weight"], 2.0);
  EXPECT_EQ(d["decorations"].size(), 1u);
  EXPECT_EQ(d["decorations"][0]["monomial"], json({{"B", 2}}));
  EXPECT_EQ(d["global_phase"], 0.5);
  EXPECT_FALSE(d["standard"]);
  EXPECT_FALSE(d["terminal"]);
  EXPECT_EQ(d["history_length"], 0);
  EXPECT_EQ(d["hash"].get<std::string>().size(), 16u);
}

TEST(Decomposition, Text) {
  auto st = make_state({"A"_m, "B"_m}, P::from_terms({{"A*B", 1.5}, {"A^3", -1.0}}));
  EXPECT_EQ(decomposition_text(st), "modes A B\norder 2\nedge A B : 1.5\ndecoration A^3 : -1\n");
}

TEST(Dot, Mapping) {
  auto st = make_state({"A"_m, "B"_m, "C"_m, "D"_m},
                       P::from_terms({{"A*B*C", 1.0}, {"A*D", 2.0}, {"B^2", 1.0}, {"C", -0.5}}));
  std::string dot = to_dot(st);
  EXPECT_NE(dot.find("\"A\" -- \"D\" [label=\"2\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"edge_A,B,C\" [shape=diamond, label=\"1\"];"), std::string::npos);
  for (const char* m : {"A", "B", "C"}) {
    EXPECT_NE(dot.find(std::string("\"edge_A,B,C\" -- \"") + m + "\";"), std::string::npos);
  }
  EXPECT_NE(dot.find("\"dec_B^2\" [shape=ellipse, style=dashed, label=\"B^2: 1\"];"),
            std::string::npos);
  EXPECT_NE(dot.find("\"lin_C\" [shape=box, style=dashed, label=\"-0.5\"];"), std::string::npos);
  EXPECT_EQ(dot.rfind("graph hypergraph {\n", 0), 0u);
}

TEST(Dot, Deterministic) {
  P f;
  f.add_term(Monomial::parse("C*D"), 1.0).add_term(Monomial::parse("A*B*C"), 2.0);
  P g;
  g.add_term(Monomial::parse("A*B*C"), 2.0).add_term(Monomial::parse("C*D"), 1.0);
  std::vector<ModeId> modes{"A"_m, "B"_m, "C"_m, "D"_m};
  EXPECT_EQ(to_dot(make_state(modes, f)), to_dot(make_state(modes, g)));
}

TEST(Report, SweepIsSeededAndValid) {
  auto a = rule_sweep(5, 20);
  auto b = rule_sweep(5, 20);
  ASSERT_EQ(a.size(), 160u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].before, b[i].before);
    EXPECT_EQ(a[i].op, b[i].op);
    EXPECT_LE(a[i].modes.size(), 3u);
    for (const auto& [m, w] : a[i].before.terms()) {
      EXPECT_TRUE(m.is_multilinear());
      EXPECT_LE(std::abs(w), 2.0);
    }
    EXPECT_NO_THROW(apply_op(make_state(a[i].modes, a[i].before), a[i].op));
  }
  EXPECT_NE(rule_sweep(6, 20)[0].before, a[0].before);
}

TEST(Report, SelectRules) {
  auto cases = rule_sweep(1, 3);
  auto xs = select_rules(cases, "X,Dp");
  EXPECT_EQ(xs.size(), 6u);
  EXPECT_EQ(select_rules(cases, "all").size(), cases.size());
  EXPECT_EQ(code_of([&] { select_rules(cases, "Q"); }), ErrorCode::kUnsupportedOp);
}

TEST(Report, LawEntryAndSummary) {
  auto rep = run_report(fidelity_law_cases({0.5}), 1.0, 14);
  ASSERT_EQ(rep.entries.size(), 1u);
  const auto& e = rep.entries[0];
  EXPECT_NEAR(e.fidelity, 0.983233, 1e-3);
  EXPECT_NEAR(e.target, std::exp(-0.125 * std::exp(-2.0)), 1e-15);
  EXPECT_TRUE(e.passed);
  json j = report_to_json(rep);
  EXPECT_EQ(j["summary"]["passed"], 1);
  EXPECT_EQ(j["summary"]["failed"], 0);
  EXPECT_EQ(j["entries"][0]["budget"], 1e-3);
  EXPECT_EQ(j["entries"][0]["rule"], "X");
  EXPECT_NE(report_table(rep).find("PASS"), std::string::npos);
}

TEST(Report, ErrorsBecomeFailedEntries) {
  VerifyCase c{"t", {"A"_m}, P::from_terms({{"A", 1.0}}), MeasureP{"A"_m, 0.0}};
  auto e = run_case(c, 1.0, 14);
  EXPECT_FALSE(e.passed);
  EXPECT_EQ(e.error, "UnsupportedOp");
}

TEST(Report, Environment) {
  ::setenv("HYPERFORGE_R", "1.25", 1);
  ::setenv("HYPERFORGE_CUTOFF", "30", 1);
  EXPECT_EQ(env_squeezing(2.0), 1.25);
  EXPECT_EQ(env_cutoff(14), 30);
  ::setenv("HYPERFORGE_CUTOFF", "x", 1);
  EXPECT_EQ(code_of([] { env_cutoff(14); }), ErrorCode::kInvalidArgument);
  ::unsetenv("HYPERFORGE_R");
  ::unsetenv("HYPERFORGE_CUTOFF");
  EXPECT_EQ(env_squeezing(2.0), 2.0);
  EXPECT_EQ(env_cutoff(14), 14);
}

}  // namespace
}  // namespace hyperforge::io
