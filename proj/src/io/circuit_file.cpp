#include "hyperforge/io/circuit_file.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperforge/errors.h"

namespace hyperforge::io {

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw HyperforgeError(ErrorCode::kMalformedInput, msg);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

ModeId mode_of(const json& j) {
  try {
    return ModeId(text(j, "mode label"));
  } catch (const HyperforgeError& e) {
    if (e.code() == ErrorCode::kMalformedInput) throw;
    malformed(e.what());
  }
}

std::vector<ModeId> modes_of(const json& j) {
  if (!j.is_array()) malformed("modes must be a list of labels");
  std::vector<ModeId> out;
  for (const auto& m : j) out.push_back(mode_of(m));
  return out;
}

json modes_json(const std::vector<ModeId>& modes) {
  json out = json::array();
  for (const auto& m : modes) out.push_back(m.str());
  return out;
}

json monomial_json(const Monomial& m) {
  json out = json::object();
  for (const auto& [mode, e] : m.factors()) out[mode.str()] = e;
  return out;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json residual_json(const PResidual& r) {
  return {{"mode", r.mode.str()},
          {"outcome", r.outcome},
          {"h", phase_to_json(r.h)},
          {"tail", phase_to_json(r.tail)}};
}

}  // namespace

json phase_to_json(const PhasePolynomial& f) {
  json out = json::array();
  if (f.constant() != 0.0) out.push_back({{"monomial", json::object()}, {"coeff", f.constant()}});
  for (const auto& [m, c] : f.terms()) out.push_back({{"monomial", monomial_json(m)}, {"coeff", c}});
  return out;
}

PhasePolynomial phase_from_json(const json& j) {
  if (!j.is_array()) malformed("initial_phase must be a list of terms");
  PhasePolynomial f;
  for (const auto& t : j) {
    const json& mono = field(t, "monomial");
    if (!mono.is_object()) malformed("monomial must map labels to exponents");
    Monomial m;
    for (const auto& [label, e] : mono.items()) {
      if (!e.is_number_integer() || e.get<int>() < 0) malformed("exponent must be a non-negative integer");
      ModeId id = mode_of(json(label));
      m = m * Monomial::power(id, e.get<int>());
    }
    double c = number(field(t, "coeff"), "coeff");
    if (m.empty()) {
      f.add_constant(c);
    } else {
      f.add_term(m, c);
    }
  }
  return f;
}

json op_to_json(const GaussianOp& op) {
  json out{{"op", std::string(op_name(op))}};
  const char* key = "s";
  if (std::holds_alternative<CPhase>(op)) {
    out["modes"] = modes_json(op_modes(op));
    key = "t";
  } else {
    out["mode"] = op_modes(op).front().str();
    if (std::holds_alternative<MeasureQ>(op) || std::holds_alternative<MeasureP>(op)) key = "m";
  }
  out["params"] = {{key, op_param(op)}};
  return out;
}

GaussianOp op_from_json(const json& j) {
  std::string name = text(field(j, "op"), "op");
  std::vector<ModeId> modes;
  if (j.contains("modes")) {
    modes = modes_of(j.at("modes"));
  } else {
    modes.push_back(mode_of(field(j, "mode")));
  }
  const json& params = field(j, "params");
  double value = 0.0;
  if (params.is_number()) {
    value = params.get<double>();
  } else if (params.is_object() && params.size() == 1) {
    value = number(params.begin().value(), "op parameter");
  } else {
    malformed("params must hold exactly one number");
  }
  return make_op(name, std::move(modes), value);
}

json circuit_to_json(const CircuitFile& c) {
  json ops = json::array();
  for (const auto& op : c.ops) ops.push_back(op_to_json(op));
  return {{"version", c.version},
          {"modes", modes_json(c.modes)},
          {"initial_phase", phase_to_json(c.initial_phase)},
          {"ops", std::move(ops)},
          {"metadata", c.metadata}};
}

CircuitFile circuit_from_json(const json& j) {
  if (!j.is_object()) malformed("circuit file must be a JSON object");
  CircuitFile c;
  const json& v = field(j, "version");
  if (!v.is_number_integer()) malformed("version must be an integer");
  c.version = v.get<int>();
  if (c.version != kFormatVersion) malformed("unsupported version " + std::to_string(c.version));
  c.modes = modes_of(field(j, "modes"));
  if (j.contains("initial_phase")) c.initial_phase = phase_from_json(j.at("initial_phase"));
  if (j.contains("ops")) {
    const json& ops = j.at("ops");
    if (!ops.is_array()) malformed("ops must be a list");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      try {
        c.ops.push_back(op_from_json(ops[i]));
      } catch (const CircuitError&) {
        throw;
      } catch (const HyperforgeError& e) {
        throw CircuitError(e.code(), i, e.what());
      }
    }
  }
  if (j.contains("metadata")) {
    if (!j.at("metadata").is_object()) malformed("metadata must be an object");
    c.metadata = j.at("metadata");
  }
  return c;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

std::string serialize(const CircuitFile& c) { return dump_canonical(circuit_to_json(c)); }

CircuitFile parse_circuit(std::string_view text) { return circuit_from_json(parse_json(text)); }

EngineState replay(const CircuitFile& c) {
  return apply_circuit(make_state(c.modes, c.initial_phase), c.ops);
}

CircuitFile circuit_of(const EngineState& st, json metadata) {
  CircuitFile c;
  c.modes = st.initial_modes;
  c.initial_phase = st.initial_phase;
  for (const auto& h : st.history) c.ops.push_back(h.op);
  c.metadata = std::move(metadata);
  return c;
}

std::string serialize_state(const EngineState& st) {
  json j{{"kind", "state"},
         {"version", kFormatVersion},
         {"circuit", circuit_to_json(circuit_of(st))},
         {"snapshot", decomposition_to_json(st)}};
  return dump_canonical(j);
}

EngineState parse_state(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object() || j.value("kind", "") != "state") malformed("not a state file");
  EngineState st = replay(circuit_from_json(field(j, "circuit")));
  if (j.contains("snapshot") && j["snapshot"].contains("hash") &&
      j["snapshot"]["hash"] != hex(state_hash(st))) {
    malformed("state snapshot does not match its circuit");
  }
  return st;
}

json decomposition_to_json(const EngineState& st) {
  auto d = decompose_graph(st.phase);
  json edges = json::array();
  for (const auto& e : d.edges) {
    edges.push_back({{"modes", modes_json(e.modes)}, {"weight", e.weight}, {"order", e.order()}});
  }
  PhasePolynomial decorations = d.decorations;
  double global = decorations.constant();
  decorations.add_constant(-global);
  json measured = json::array();
  for (const auto& m : st.measurements) {
    measured.push_back({{"mode", m.mode.str()},
                        {"basis", m.basis == Basis::kQ ? "q" : "p"},
                        {"outcome", m.outcome}});
  }
  json out{{"modes", modes_json(st.active_modes)},
           {"edges", std::move(edges)},
           {"decorations", phase_to_json(decorations)},
           {"global_phase", global},
           {"order", d.order},
           {"standard", d.is_standard()},
           {"history_length", st.history.size()},
           {"terminal", st.terminated()},
           {"measurements", std::move(measured)},
           {"hash", hex(state_hash(st))}};
  if (st.terminal_residual) out["residual"] = residual_json(*st.terminal_residual);
  return out;
}

std::string decomposition_text(const EngineState& st) {
  auto d = decompose_graph(st.phase);
  std::ostringstream os;
  os << "modes";
  for (const auto& m : st.active_modes) os << ' ' << m.str();
  os << "\norder " << d.order << '\n';
  for (const auto& e : d.edges) {
    os << "edge";
    for (const auto& m : e.modes) os << ' ' << m.str();
    os << " : " << format_double(e.weight) << '\n';
  }
  for (const auto& [m, c] : d.decorations.terms()) {
    os << "decoration " << m.to_string() << " : " << format_double(c) << '\n';
  }
  if (d.decorations.constant() != 0.0) {
    os << "global_phase " << format_double(d.decorations.constant()) << '\n';
  }
  for (const auto& m : st.measurements) {
    os << "measured " << m.mode.str() << (m.basis == Basis::kQ ? " q " : " p ")
       << format_double(m.outcome) << '\n';
  }
  if (st.terminal_residual) {
    os << "terminal p-measurement on " << st.terminal_residual->mode.str() << " outcome "
       << format_double(st.terminal_residual->outcome) << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw HyperforgeError(ErrorCode::kMalformedInput, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw HyperforgeError(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << content;
}

}  // namespace hyperforge::io
