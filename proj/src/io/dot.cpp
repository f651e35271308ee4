#include "hyperforge/io/dot.h"

#include <sstream>

#include "hyperforge/hypergraph.h"

namespace hyperforge::io {

namespace {

std::string quoted(const std::string& s) { return '"' + s + '"'; }

std::string joined(const std::vector<ModeId>& modes) {
  std::string out;
  for (const auto& m : modes) {
    if (!out.empty()) out += ',';
    out += m.str();
  }
  return out;
}

}  // namespace

std::string to_dot(const EngineState& st) {
  auto d = decompose_graph(st.phase);
  std::ostringstream os;
  os << "graph hypergraph {\n";
  os << "  node [shape=circle];\n";
  for (const auto& m : st.active_modes) os << "  " << quoted(m.str()) << ";\n";

  for (const auto& e : d.edges) {
    std::string w = format_double(e.weight);
    if (e.order() == 1) {
      std::string id = "lin_" + e.modes[0].str();
      os << "  " << quoted(id) << " [shape=box, style=dashed, label=" << quoted(w) << "];\n";
      os << "  " << quoted(e.modes[0].str()) << " -- " << quoted(id) << " [style=dashed];\n";
    } else if (e.order() == 2) {
      os << "  " << quoted(e.modes[0].str()) << " -- " << quoted(e.modes[1].str())
         << " [label=" << quoted(w) << "];\n";
    } else {
      std::string id = "edge_" + joined(e.modes);
      os << "  " << quoted(id) << " [shape=diamond, label=" << quoted(w) << "];\n";
      for (const auto& m : e.modes) os << "  " << quoted(id) << " -- " << quoted(m.str()) << ";\n";
    }
  }

  for (const auto& [mono, c] : d.decorations.terms()) {
    std::string id = "dec_" + mono.to_string();
    os << "  " << quoted(id) << " [shape=ellipse, style=dashed, label="
       << quoted(mono.to_string() + ": " + format_double(c)) << "];\n";
    for (const auto& m : mono.modes()) {
      os << "  " << quoted(id) << " -- " << quoted(m.str()) << " [style=dashed];\n";
    }
  }
  if (d.decorations.constant() != 0.0) {
    os << "  label=" << quoted("global phase " + format_double(d.decorations.constant())) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hyperforge::io
