#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperforge/engine.h"
#include "hyperforge/gaussian_op.h"
#include "hyperforge/hypergraph.h"
#include "hyperforge/phase_poly.h"

namespace hyperforge::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct CircuitFile {
  int version = kFormatVersion;
  std::vector<ModeId> modes;
  PhasePolynomial initial_phase;
  std::vector<GaussianOp> ops;
  json metadata = json::object();
};

// Terms as [{"monomial": {"A": 1}, "coeff": c}]; the constant is the entry
// with an empty monomial.
json phase_to_json(const PhasePolynomial& f);
PhasePolynomial phase_from_json(const json& j);

json op_to_json(const GaussianOp& op);
GaussianOp op_from_json(const json& j);

json circuit_to_json(const CircuitFile& c);
CircuitFile circuit_from_json(const json& j);

// Canonical text: sorted keys, two-space indent, shortest round-trip numbers,
// trailing newline. serialize(parse(x)) == x for canonical x.
std::string serialize(const CircuitFile& c);
CircuitFile parse_circuit(std::string_view text);

EngineState replay(const CircuitFile& c);
CircuitFile circuit_of(const EngineState& st, json metadata = json::object());

// A state file is the circuit that produced the state plus a readable
// snapshot of the result; loading replays the circuit.
std::string serialize_state(const EngineState& st);
EngineState parse_state(std::string_view text);

json decomposition_to_json(const EngineState& st);
std::string decomposition_text(const EngineState& st);

std::string dump_canonical(const json& j);
json parse_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace hyperforge::io
