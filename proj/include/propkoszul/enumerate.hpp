#pragma once

// Enumeration of decorated graphs up to the relabeling relation.

#include <span>
#include <vector>

#include "propkoszul/graph.hpp"

namespace propkoszul {

/// Canonical codes of all graphs with `weight` generator vertices, m global
/// outputs and n global inputs. Vertices are singleton kPlain blocks. When
/// connected_only is false, disconnected graphs and passthrough strands are
/// included (weight 0 then yields the permutations of n strands).
/// Classes that vanish by an odd automorphism are dropped. Sorted by code.
std::vector<Code> enumerate_free(GeneratorTable gens, int weight, int m, int n, bool connected_only);

inline std::vector<Code> enumerate_connected(GeneratorTable gens, int weight, int m, int n) {
  return enumerate_free(gens, weight, m, n, true);
}

/// 2-level graphs: level-1 vertices (input side, block kind kLevelOne) are
/// decorated by `bottom` generators, level-2 vertices (output side, kind
/// kLevelTwo) by `top` generators; edges run from level 1 to level 2 only and
/// unit strands fill the remaining flow. `top`/`bottom` index into gens.
std::vector<Code> enumerate_two_level(GeneratorTable gens, std::span<const int> top,
                                      std::span<const int> bottom, int m, int n,
                                      bool connected_only);

}  // namespace propkoszul
