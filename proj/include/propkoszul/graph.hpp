#pragma once

// Decorated directed flow graphs and their canonical forms modulo relabeling.
//
// A graph has m global outputs and n global inputs. Each vertex carries a
// generator decoration with an explicit order on its ports; the source of
// every vertex in-port and every global output is stored. Vertices are
// grouped into blocks (each with a kind and a homological degree) and blocks
// into sub-blocks (with a degree); the vertex list order fixes the order of
// the graded symbols, so reordering vertices can cost a Koszul sign.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "propkoszul/linalg.hpp"
#include "propkoszul/sbimodule.hpp"

namespace propkoszul {

struct Generator {
  std::string id;
  int outputs = 1;
  int inputs = 1;
  Symmetry left = Symmetry::Regular;   // action of S_outputs
  Symmetry right = Symmetry::Regular;  // action of S_inputs

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Source of an input slot: a global input (vertex == kGlobal, port = input
/// index) or an out-port of a vertex.
struct PortRef {
  int vertex = -1;
  int port = 0;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};
inline constexpr int kGlobal = -1;
/// Decoration of a vertex that stands for a composite (contracted) vertex.
inline constexpr int kCompositeGen = -1;

struct Vertex {
  int gen = 0;
  int outputs = 0;
  std::vector<PortRef> in;
  int block = 0;
  int sub = 0;
};

/// Block kinds used by the homological constructions.
enum BlockKind : int {
  kBarBlock = 0,     // suspended element of the augmentation ideal (bar construction)
  kPlain = 1,        // vertex of a P stage (unsuspended, relations apply)
  kCoVertex = 2,     // suspended cogenerator of the Koszul dual
  kCoPair = 3,       // two merged cogenerators (image of the internal bar differential)
  kCobarBlock = 4,   // desuspended Koszul-dual element (cobar construction)
  kLevelOne = 5,     // level-1 vertex of a 2-level graph (input side)
  kLevelTwo = 6,     // level-2 vertex of a 2-level graph (output side)
};

struct Block {
  int kind = kPlain;
  int degree = 0;
};

struct Graph {
  int outputs = 0;  // m
  int inputs = 0;   // n
  std::vector<Vertex> vertices;
  std::vector<PortRef> out;  // source of each global output
  std::vector<Block> blocks;
  std::vector<int> sub_degree;

  int weight() const { return static_cast<int>(vertices.size()); }
};

/// Generator table shared by all graphs of one computation.
using GeneratorTable = std::span<const Generator>;

/// Exact, decodable encoding of a graph in a fixed vertex order.
using Code = std::vector<std::int32_t>;

Code encode(const Graph& g);
Graph decode(const Code& c);

/// Structural checks: port usage, acyclicity, contiguous grouping.
/// Returns a diagnostic, or nullopt when the graph is well formed.
std::optional<std::string> check_well_formed(const Graph& g, GeneratorTable gens);

/// Plain graph: every vertex in its own block of the given kind and degree.
Graph with_singleton_blocks(Graph g, int kind, int degree);

bool is_connected(const Graph& g);
bool is_acyclic(const Graph& g);
/// reach[u][v]: a directed path of length >= 1 from u to v.
std::vector<std::vector<bool>> reachability(const Graph& g);
/// Pairs (u, v) joined by at least one edge u -> v and by no longer path.
std::vector<std::pair<int, int>> contractible_pairs(const Graph& g);

struct CanonicalGraph {
  Code code;
  int sign = 1;  // original = sign * canonical; 0 when the class vanishes
};

/// Canonical representative modulo vertex renumbering and port relabeling.
/// Port permutations on trivial/sign sides are absorbed into the decoration
/// (sign sides contribute the signature); regular sides keep their order.
/// Reordering graded symbols contributes the Koszul sign.
CanonicalGraph canonical_form(const Graph& g, GeneratorTable gens);

/// Applies a relabeling of global legs: output k becomes sigma(k), input i
/// becomes tau(i).
Graph relabel_legs(const Graph& g, const Permutation& sigma, const Permutation& tau);

/// Formal rational combination of canonical graphs.
using LinComb = std::map<Code, Rational>;

void add_term(LinComb& lc, const Graph& g, const Rational& coef, GeneratorTable gens);
void add_to(LinComb& lc, const Code& code, const Rational& coef);
LinComb canonicalize(const std::vector<std::pair<Rational, Graph>>& terms, GeneratorTable gens);

/// Graph literal: `a=gen; b=gen; in[1] -> a.in[1]; a.out[1] -> b.in[2]; b.out[1] -> out[1]`
/// (1-based ports and legs). Vertex order follows declaration order.
Graph parse_graph_literal(const std::string& text, GeneratorTable gens);
std::string format_graph_literal(const Graph& g, GeneratorTable gens);

/// Result of merging two adjacent vertices into one composite vertex.
struct Contraction {
  Graph graph;
  int merged = -1;  // index of the merged vertex in graph
  /// For each in-port / out-port of the merged vertex: (original vertex, port).
  std::vector<std::pair<int, int>> in_ports;
  std::vector<std::pair<int, int>> out_ports;
};

/// Replaces u and v (joined by edges in one direction, no other path between
/// them) by one composite vertex whose ports are the external ports of the
/// pair, ordered by (lower-level vertex first, then port index).
/// Throws std::invalid_argument when u and v are not adjacent or the
/// contraction would create a cycle.
Contraction contract_edge_pair(const Graph& g, int u, int v);

}  // namespace propkoszul
