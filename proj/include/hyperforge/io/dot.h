#pragma once

#include <string>

#include "hyperforge/engine.h"

namespace hyperforge::io {

// Graphviz rendering. Vertices are circles. Order-2 edges are plain edges
// labeled with the weight. Order >= 3 edges become a diamond junction node
// labeled with the weight and joined to each member. Order-1 edges and
// decorations (non-multilinear terms) are dashed nodes attached to their
// modes. Output is sorted and deterministic.
std::string to_dot(const EngineState& st);

}  // namespace hyperforge::io
