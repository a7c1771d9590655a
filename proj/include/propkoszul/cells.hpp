#pragma once

// Shared machinery for the homological constructions: spaces spanned by
// canonical structured graphs ("cells"), their quotients by the relation
// ideal, and subspaces cut out by the Koszul-dual condition.
//
// Every construction is flattened to generator graphs: a vertex of B(P),
// B^c(P^¡), P^¡ ⊠ P, ... is a connected cluster of generator vertices, encoded
// as a block. Relations act inside blocks that carry P-elements; the Koszul
// dual condition is the vanishing of the internal bar differential on the
// cogenerator clusters.

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "propkoszul/graph.hpp"
#include "propkoszul/linalg.hpp"

namespace propkoszul {

/// Basis of R(a,b) (closed under the S_a x S_b action) for every arity pair
/// carrying relations. Elements are combinations of 2-vertex plain graphs.
using RelationTable = std::map<std::pair<int, int>, std::vector<LinComb>>;

struct CellContext {
  GeneratorTable gens;
  const RelationTable* relations = nullptr;
};

class CellSpace {
 public:
  CellSpace() = default;
  /// Codes are sorted and deduplicated.
  explicit CellSpace(std::vector<Code> codes);

  std::size_t size() const { return codes_.size(); }
  const Code& code(std::size_t i) const { return codes_[i]; }
  const std::vector<Code>& codes() const { return codes_; }
  std::optional<std::size_t> find(const Code& c) const;
  /// Throws std::logic_error when a term is not a cell of this space.
  SparseVec to_vector(const LinComb& lc) const;

 private:
  std::vector<Code> codes_;
  std::map<Code, std::size_t> index_;
};

/// Pair (u,v) lies inside a cluster that carries an element of P, so that
/// relations may be substituted there.
bool relation_scope(const Graph& g, int u, int v);

/// Replaces the contractible pair (u,v) by each term of `relation` (a
/// combination of 2-vertex graphs whose legs are matched to the pair's
/// external ports: u's ports before v's, each in port order).
LinComb substitute_relation(const Graph& g, int u, int v, const LinComb& relation,
                            GeneratorTable gens);

/// Spanning set of the ideal slice through this cell.
std::vector<LinComb> ideal_generators(const Graph& g, const CellContext& ctx);

/// Cell space modulo the relation ideal. The quotient basis consists of the
/// cells that are not pivots of the ideal's echelon form.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(CellSpace ambient, const CellContext& ctx, bool apply_relations = true);

  std::size_t dim() const { return basis_cells_.size(); }
  std::size_t ideal_dim() const { return ideal_.rank(); }
  const CellSpace& ambient() const { return ambient_; }
  /// Ambient index of the q-th quotient basis cell.
  std::size_t cell(std::size_t q) const { return basis_cells_[q]; }
  SparseVec project(const SparseVec& ambient_vector) const;
  SparseVec project(const LinComb& lc) const { return project(ambient_.to_vector(lc)); }
  /// Lift of a quotient vector to the ambient space (through basis cells).
  LinComb lift(const SparseVec& quotient_vector) const;

 private:
  CellSpace ambient_;
  Echelon ideal_;
  std::vector<std::size_t> basis_cells_;
  std::vector<long> quotient_index_;
};

/// Smallest cell set containing `seeds` and closed under relation
/// substitution; quotients of it compute membership in the full ideal.
CellSpace relation_closure(const std::vector<Code>& seeds, const CellContext& ctx);

using CellMap = std::function<LinComb(const Graph&)>;

/// Linear map on a quotient given cellwise on representatives.
LinComb apply_cellwise(const QuotientSpace& q, const SparseVec& v, const CellMap& f);

/// One degree of a complex: a quotient space and optionally a subspace of it
/// (columns in quotient coordinates).
struct ComplexLevel {
  QuotientSpace space;
  std::optional<RationalMatrix> subspace;

  std::size_t dim() const { return subspace ? subspace->cols() : space.dim(); }
};

/// Kernel of `constraint` on the quotient, with the target quotient built by
/// relation closure of the images.
RationalMatrix constrained_subspace(const QuotientSpace& q, const CellMap& constraint,
                                    const CellContext& ctx);

/// Assembles boundary matrices levels[i] -> levels[i-1] from a cellwise
/// differential. Throws std::logic_error if an image leaves the subspace.
ChainComplex assemble_complex(const std::vector<ComplexLevel>& levels, const CellMap& d);

// Structural operations with their Koszul signs -------------------------------
// These expect cells in canonical vertex order (as returned by decode of a
// canonical code), where each block occupies a contiguous run of vertices.

/// Sign-carrying graph produced by a structural operation.
using SignedGraphs = std::vector<std::pair<int, Graph>>;

LinComb collect(const SignedGraphs& terms, GeneratorTable gens);

/// Edge contraction on suspended clusters: merges every admissible pair of
/// kBarBlock blocks (adjacent, no third block on a path between them).
SignedGraphs bar_merges(const Graph& g);
/// Moves a minimal (or maximal, when `minimal` is false) kCoVertex to the
/// P stage, dropping its suspension.
SignedGraphs cogenerator_moves(const Graph& g, bool minimal);
/// Moves a minimal kBarBlock cluster into the P stage.
SignedGraphs bar_block_moves(const Graph& g);
/// Splits kCobarBlock clusters into a lower and an upper connected part.
SignedGraphs cobar_splits(const Graph& g);
/// Internal bar differential of the cogenerator clusters: merges adjacent
/// kCoVertex pairs into kCoPair blocks, and adjacent singleton sub-blocks of
/// kCobarBlock clusters into pairs.
SignedGraphs coalgebra_constraint(const Graph& g);

// Cell enumeration over a plain generator graph --------------------------------

/// Set partitions into `blocks` connected clusters with acyclic quotient.
/// With `within` given, only those vertices are partitioned; the others get
/// block -1 and are ignored by the acyclicity test.
std::vector<std::vector<int>> cluster_partitions(const Graph& g, int blocks,
                                                 const std::vector<bool>& within = {});
/// Subsets of vertices closed upwards (no edge leaving the set) or downwards.
std::vector<std::vector<bool>> closed_subsets(const Graph& g, int size, bool upward);

/// Rebuilds a plain graph with the given block assignment. `block_of[v]` is
/// the block id of vertex v; `blocks` gives kinds/degrees; when
/// `singleton_subs` is set every vertex gets its own sub-block of degree
/// `sub_degree`, otherwise each block has one sub-block of degree 0.
Graph structured_cell(const Graph& plain, const std::vector<int>& block_of,
                      const std::vector<Block>& blocks, bool singleton_subs, int sub_degree);

}  // namespace propkoszul
