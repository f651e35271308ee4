#include "hyperforge/io/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "hyperforge/engine.h"
#include "hyperforge/errors.h"
#include "hyperforge/io/circuit_file.h"

namespace hyperforge::io {

using nlohmann::json;

std::size_t VerificationReport::passed() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.passed ? 1 : 0;
  return n;
}

std::size_t VerificationReport::failed() const { return entries.size() - passed(); }

std::vector<VerifyCase> rule_sweep(std::uint64_t seed, std::size_t states) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  std::uniform_real_distribution<double> small(-0.5, 0.5);
  std::uniform_real_distribution<double> tiny(0.002, 0.01);
  std::uniform_int_distribution<int> pick3(0, 2);
  std::uniform_int_distribution<int> turns(1, 2);
  std::bernoulli_distribution coin(0.5);

  const std::vector<ModeId> modes{ModeId("A"), ModeId("B"), ModeId("C")};
  std::vector<VerifyCase> out;
  for (std::size_t k = 0; k < states; ++k) {
    PhasePolynomial f;
    while (!f.has_terms()) {
      for (unsigned mask = 1; mask < 8; ++mask) {
        if (!coin(rng)) continue;
        std::vector<ModeId> sub;
        for (unsigned i = 0; i < 3; ++i) {
          if (mask & (1u << i)) sub.push_back(modes[i]);
        }
        f.add_term(Monomial::multilinear(sub), weight(rng));
      }
    }
    auto ia = static_cast<std::size_t>(pick3(rng));
    const ModeId& a = modes[ia];
    const ModeId& b = modes[(ia + (coin(rng) ? 1 : 2)) % 3];
    double sign = coin(rng) ? 1.0 : -1.0;
    double turn = (coin(rng) ? 1.0 : -1.0) * turns(rng);
    std::vector<GaussianOp> ops{
        Zdisp{a, weight(rng)},
        Xdisp{a, small(rng)},
        ShearQ{a, weight(rng)},
        ShearP{a, sign * tiny(rng)},
        Squeeze{a, small(rng)},
        make_cphase({a, b}, weight(rng)),
        make_cphase(modes, weight(rng)),
        Rotate{a, turn * std::numbers::pi},
    };
    for (auto& op : ops) out.push_back({"sweep", modes, f, std::move(op)});
  }
  return out;
}

std::vector<VerifyCase> fidelity_law_cases(const std::vector<double>& strengths) {
  const std::vector<ModeId> modes{ModeId("A"), ModeId("B"), ModeId("C")};
  std::vector<VerifyCase> out;
  for (double s : strengths) {
    out.push_back({"law", modes, PhasePolynomial::from_terms({{"A*B*C", 1.0}}), Xdisp{modes[0], s},
                   1e-3, true});
  }
  return out;
}

std::vector<VerifyCase> select_rules(std::vector<VerifyCase> cases, const std::string& rules) {
  if (rules == "all") return cases;
  std::vector<std::string> names;
  std::stringstream ss(rules);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) names.push_back(item);
  }
  static const std::vector<std::string> known{"Z", "X", "Dq", "Dp", "S", "R", "C", "Mq", "Mp"};
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      throw HyperforgeError(ErrorCode::kUnsupportedOp, "unknown rule '" + n + "'");
    }
  }
  std::erase_if(cases, [&](const VerifyCase& c) {
    return std::find(names.begin(), names.end(), op_name(c.op)) == names.end();
  });
  return cases;
}

ReportEntry run_case(const VerifyCase& c, double r, int cutoff, const oracle::VerifyOptions& opts) {
  ReportEntry e;
  e.rule = std::string(op_name(c.op));
  e.group = c.group;
  e.params = op_to_json(c.op);
  e.state = phase_to_json(c.before);
  e.squeezing = r;
  e.cutoff = cutoff;
  e.budget = c.budget;
  e.backend = std::string(oracle::backend_name(opts.backend));

  oracle::FockConfig cfg;
  cfg.modes = c.modes;
  cfg.cutoff = cutoff;
  cfg.default_squeezing = r;
  try {
    e.formula_prediction = oracle::formula_prediction(c.op, cfg, opts);
    if (c.against_formula) {
      if (!e.formula_prediction) {
        throw HyperforgeError(ErrorCode::kUnsupportedOp, "no closed form for " + e.rule);
      }
      e.target = *e.formula_prediction;
    }
    EngineState after = apply_op(make_state(c.modes, c.before), c.op);
    auto res = oracle::verify_rule(c.op, c.before, after.phase, cfg, opts);
    e.fidelity = res.fidelity;
    e.leakage = res.leakage;
    e.error_estimate = res.error_estimate;
    e.passed = std::abs(e.fidelity - e.target) <= e.budget;
    if (!c.against_formula) e.passed = e.fidelity >= e.target - e.budget;
  } catch (const HyperforgeError& err) {
    e.error = std::string(err.code_name());
    e.passed = false;
  }
  return e;
}

VerificationReport run_report(const std::vector<VerifyCase>& cases, double r, int cutoff,
                              const oracle::VerifyOptions& opts) {
  VerificationReport rep;
  for (const auto& c : cases) rep.entries.push_back(run_case(c, r, cutoff, opts));
  return rep;
}

json report_to_json(const VerificationReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json j{{"rule", e.rule},
           {"group", e.group},
           {"params", e.params},
           {"state", e.state},
           {"squeezing", e.squeezing},
           {"cutoff", e.cutoff},
           {"fidelity", e.fidelity},
           {"leakage", e.leakage},
           {"error_estimate", e.error_estimate},
           {"target", e.target},
           {"budget", e.budget},
           {"backend", e.backend},
           {"passed", e.passed}};
    j["formula_prediction"] = e.formula_prediction ? json(*e.formula_prediction) : json(nullptr);
    if (!e.error.empty()) j["error"] = e.error;
    entries.push_back(std::move(j));
  }
  return {{"entries", std::move(entries)},
          {"summary",
           {{"total", rep.entries.size()}, {"passed", rep.passed()}, {"failed", rep.failed()}}}};
}

std::string report_table(const VerificationReport& rep) {
  std::string out = fmt::format("{:<6} {:<18} {:>5} {:>6} {:>12} {:>12} {:>9} {:>8}  {}\n", "group",
                                "op", "r", "cutoff", "fidelity", "formula", "leakage", "budget",
                                "status");
  for (const auto& e : rep.entries) {
    std::string op = e.params.value("op", "?") + "(" +
                     (e.params.contains("modes") ? std::string("...") : e.params.value("mode", "")) +
                     "," + fmt::format("{:.4g}", e.params["params"].begin().value().get<double>()) +
                     ")";
    std::string formula = e.formula_prediction ? fmt::format("{:.8f}", *e.formula_prediction) : "-";
    std::string status = e.passed ? "PASS" : (e.error.empty() ? "FAIL" : "ERROR " + e.error);
    out += fmt::format("{:<6} {:<18} {:>5.2f} {:>6} {:>12.8f} {:>12} {:>9.2e} {:>8.1e}  {}\n", e.group,
                       op, e.squeezing, e.cutoff, e.fidelity, formula, e.leakage, e.budget, status);
  }
  out += fmt::format("{} passed, {} failed, {} total\n", rep.passed(), rep.failed(),
                     rep.entries.size());
  return out;
}

double env_squeezing(double fallback) {
  const char* v = std::getenv("HYPERFORGE_R");
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return parse_double(v);
  } catch (const HyperforgeError&) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "HYPERFORGE_R is not a number");
  }
}

int env_cutoff(int fallback) {
  const char* v = std::getenv("HYPERFORGE_CUTOFF");
  if (v == nullptr || *v == '\0') return fallback;
  int n = 0;
  std::string_view s(v);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "HYPERFORGE_CUTOFF is not a positive integer");
  }
  return n;
}

}  // namespace hyperforge::io
