#pragma once

// Built-in presentations and the presentation file format.
//
// A presentation document is JSON:
//   {"name": ..., "description": ...,
//    "generators": [{"id", "outputs", "inputs", "left_symmetry", "right_symmetry"}],
//    "relations": [{"component": [m, n], "terms": [{"coef": "p/q", "graph": literal}]}]}
// Symmetries are "trivial", "sign" or "regular"; graph literals use the syntax
// of parse_graph_literal.

#include <string>
#include <vector>

#include "propkoszul/propcalc.hpp"

namespace propkoszul {

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
Presentation load_preset(const std::string& name);

/// Throws std::invalid_argument with a diagnostic on malformed input,
/// non-quadratic or disconnected relation graphs and arity mismatches.
Presentation parse_presentation(const std::string& document);
std::string serialize_presentation(const Presentation& p);

Presentation load_presentation_file(const std::string& path);

}  // namespace propkoszul
