#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperforge/engine.h"
#include "hyperforge/errors.h"
#include "hyperforge/io/circuit_file.h"
#include "hyperforge/io/dot.h"
#include "hyperforge/io/report.h"
#include "hyperforge/io/server.h"
#include "hyperforge/recipes.h"

using namespace hyperforge;
using nlohmann::json;

namespace {

constexpr int kExitError = 2;
constexpr int kExitVerifyFailed = 3;

std::vector<ModeId> split_modes(const std::string& text) {
  std::vector<ModeId> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.emplace_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

// "A*B*C:1.5"
void add_term_spec(PhasePolynomial& f, const std::string& spec) {
  auto colon = spec.rfind(':');
  if (colon == std::string::npos) {
    throw HyperforgeError(ErrorCode::kMalformedInput, "term '" + spec + "' must look like A*B:1.5");
  }
  f.add_term(Monomial::parse(spec.substr(0, colon)), parse_double(spec.substr(colon + 1)));
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_file(path, content);
  }
}

// State files and circuit files are both accepted wherever a state is read.
EngineState load_state(const std::string& path) {
  std::string text = io::read_file(path);
  json j = io::parse_json(text);
  if (j.is_object() && j.contains("kind")) return io::parse_state(text);
  return io::replay(io::circuit_from_json(j));
}

int report_error(const HyperforgeError& e) {
  json err{{"code", std::string(e.code_name())}, {"message", e.what()}};
  if (const auto* ce = dynamic_cast<const CircuitError*>(&e)) err["step"] = ce->step();
  std::cerr << json{{"error", err}}.dump() << '\n';
  return kExitError;
}

json recipe_metadata(const Recipe& r) {
  json m{{"recipe", r.name},
         {"target", io::phase_to_json(r.target_description)},
         {"assumptions", r.assumptions}};
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperforge: phase-polynomial hypergraph states under Gaussian operations"};
  app.require_subcommand(1);

  // new
  auto* cmd_new = app.add_subcommand("new", "Create a state file");
  std::string new_modes, new_out;
  std::vector<std::string> new_terms;
  double new_const = 0.0;
  cmd_new->add_option("--modes", new_modes, "Comma-separated mode labels")->required();
  cmd_new->add_option("--term", new_terms, "Initial phase term, e.g. A*B*C:1");
  cmd_new->add_option("--const", new_const, "Initial global phase");
  cmd_new->add_option("-o,--output", new_out, "Output path (default stdout)");

  // apply
  auto* cmd_apply = app.add_subcommand("apply", "Apply operations to a state file");
  std::string apply_in, apply_out;
  std::vector<std::string> apply_ops;
  bool apply_json = false;
  cmd_apply->add_option("state", apply_in, "State or circuit file")->required();
  cmd_apply->add_option("--op", apply_ops, "Operation, e.g. \"Dp(A,1)\"")->required();
  cmd_apply->add_option("-o,--output", apply_out, "Output state path (default: overwrite input)");
  cmd_apply->add_flag("--json", apply_json, "Print the decomposition as JSON");

  // run
  auto* cmd_run = app.add_subcommand("run", "Replay a circuit file");
  std::string run_in, run_state_out;
  bool run_json = false;
  cmd_run->add_option("circuit", run_in, "Circuit file")->required();
  cmd_run->add_option("--state-out", run_state_out, "Also write the final state file");
  cmd_run->add_flag("--json", run_json, "Print the decomposition as JSON");

  // recipe
  auto* cmd_recipe = app.add_subcommand("recipe", "Emit a protocol as a circuit file");
  std::string recipe_name, recipe_out, recipe_ancilla = "A", recipe_controls = "B,C",
                                       recipe_target = "D";
  double recipe_weight = 2.0, recipe_s = 1.0;
  int recipe_targets = 2;
  bool paper_literal = false;
  cmd_recipe->add_option("name", recipe_name, "toffoli | multi-target | order-raise")
      ->required()
      ->check(CLI::IsMember({"toffoli", "multi-target", "order-raise"}));
  cmd_recipe->add_option("--ancilla", recipe_ancilla, "Ancilla mode");
  cmd_recipe->add_option("--controls", recipe_controls, "Two control modes");
  cmd_recipe->add_option("--target", recipe_target, "Target mode (toffoli)");
  cmd_recipe->add_option("--weight", recipe_weight, "Ancilla-target weight (toffoli)");
  cmd_recipe->add_option("--s", recipe_s, "Momentum-shear strength (toffoli)");
  cmd_recipe->add_option("--targets", recipe_targets, "Number of targets D1..Dm (multi-target)")
      ->check(CLI::PositiveNumber);
  cmd_recipe->add_flag("--paper-literal", paper_literal,
                       "Omit the cross-term cleanup and report leftover terms");
  cmd_recipe->add_option("-o,--output", recipe_out, "Output path (default stdout)");

  // export-dot
  auto* cmd_dot = app.add_subcommand("export-dot", "Render a state as Graphviz DOT");
  std::string dot_in, dot_out;
  cmd_dot->add_option("state", dot_in, "State or circuit file")->required();
  cmd_dot->add_option("-o,--output", dot_out, "Output path (default stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Check rewrite rules against the Fock oracle");
  std::string verify_rules = "all", verify_json, verify_backend = "conditioned";
  double verify_r = io::env_squeezing(2.0);
  int verify_cutoff = io::env_cutoff(14);
  std::uint64_t verify_seed = 20240917;
  std::size_t verify_states = 20;
  cmd_verify->add_option("--rules", verify_rules, "all or comma-separated op names");
  cmd_verify->add_option("--r", verify_r, "Squeezing parameter (HYPERFORGE_R)");
  cmd_verify->add_option("--cutoff", verify_cutoff, "Fock cutoff (HYPERFORGE_CUTOFF)");
  cmd_verify->add_option("--seed", verify_seed, "Sweep seed");
  cmd_verify->add_option("--states", verify_states, "Random states in the sweep");
  cmd_verify->add_option("--backend", verify_backend, "conditioned | dense")
      ->check(CLI::IsMember({"conditioned", "dense"}));
  cmd_verify->add_option("--json", verify_json, "Write the JSON report here ('-' for stdout)");

  // serve
  auto* cmd_serve = app.add_subcommand("serve", "Run the JSON-over-HTTP session API");
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  cmd_serve->add_option("--host", serve_host, "Bind address");
  cmd_serve->add_option("--port", serve_port, "Port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_new) {
      PhasePolynomial f;
      for (const auto& t : new_terms) add_term_spec(f, t);
      f.add_constant(new_const);
      emit(new_out, io::serialize_state(make_state(split_modes(new_modes), f)));
    } else if (*cmd_apply) {
      EngineState st = load_state(apply_in);
      std::vector<GaussianOp> ops;
      for (const auto& o : apply_ops) ops.push_back(parse_op(o));
      st = apply_circuit(std::move(st), ops);
      io::write_file(apply_out.empty() ? apply_in : apply_out, io::serialize_state(st));
      std::cout << (apply_json ? io::decomposition_to_json(st).dump(2) + "\n" : io::decomposition_text(st));
    } else if (*cmd_run) {
      EngineState st = io::replay(io::parse_circuit(io::read_file(run_in)));
      if (!run_state_out.empty()) io::write_file(run_state_out, io::serialize_state(st));
      std::cout << (run_json ? io::decomposition_to_json(st).dump(2) + "\n" : io::decomposition_text(st));
    } else if (*cmd_recipe) {
      Recipe r;
      auto controls = split_modes(recipe_controls);
      if (controls.size() != 2) {
        throw HyperforgeError(ErrorCode::kInvalidArgument, "--controls needs exactly two modes");
      }
      std::pair<ModeId, ModeId> cpair{controls[0], controls[1]};
      if (recipe_name == "toffoli") {
        r = toffoli_recipe(ModeId(recipe_ancilla), cpair, ModeId(recipe_target), recipe_weight, recipe_s);
      } else if (recipe_name == "multi-target") {
        std::vector<ModeId> targets;
        for (int i = 1; i <= recipe_targets; ++i) targets.emplace_back("D" + std::to_string(i));
        r = multi_target_recipe(ModeId(recipe_ancilla), cpair, targets, paper_literal);
      } else {
        r = order_raise_demo();
      }
      io::CircuitFile c{io::kFormatVersion, r.modes, r.input, r.ops, recipe_metadata(r)};
      if (paper_literal) {
        PhasePolynomial left = leftover_terms(r);
        c.metadata["leftover_terms"] = io::phase_to_json(left);
        std::cerr << "leftover terms:";
        if (!left.has_terms()) std::cerr << " none";
        for (const auto& [m, w] : left.terms()) std::cerr << ' ' << m.to_string() << ':' << format_double(w);
        std::cerr << '\n';
      }
      emit(recipe_out, io::serialize(c));
    } else if (*cmd_dot) {
      emit(dot_out, io::to_dot(load_state(dot_in)));
    } else if (*cmd_verify) {
      oracle::VerifyOptions opts;
      if (verify_backend == "dense") opts.backend = oracle::Backend::kDense;
      auto cases = io::fidelity_law_cases();
      auto sweep = io::rule_sweep(verify_seed, verify_states);
      cases.insert(cases.end(), sweep.begin(), sweep.end());
      cases = io::select_rules(std::move(cases), verify_rules);
      auto rep = io::run_report(cases, verify_r, verify_cutoff, opts);
      if (verify_json == "-") {
        std::cout << io::report_to_json(rep).dump(2) << '\n';
      } else {
        std::cout << io::report_table(rep);
        if (!verify_json.empty()) io::write_file(verify_json, io::report_to_json(rep).dump(2) + "\n");
      }
      return rep.failed() == 0 ? 0 : kExitVerifyFailed;
    } else if (*cmd_serve) {
      io::ServerOptions so{io::env_squeezing(2.0), io::env_cutoff(14)};
      io::Service svc(so);
      int port = svc.bind(serve_host, serve_port);
      std::cerr << "listening on http://" << serve_host << ':' << port << '\n';
      svc.listen();
    }
  } catch (const HyperforgeError& e) {
    return report_error(e);
  }
  return 0;
}
