#pragma once

// Free PROPs, quadratic presentations and their weight-graded quotients, the
// composition product and grafting in the quotient.

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "propkoszul/cells.hpp"
#include "propkoszul/graph.hpp"
#include "propkoszul/linalg.hpp"

namespace propkoszul {

struct TruncationParams {
  int max_weight = 3;
  int max_biarity = 6;  // bound on m + n

  bool admits(int m, int n) const { return m >= 1 && n >= 1 && m + n <= max_biarity; }
};

/// A relation: combination of connected 2-vertex graphs of arity (m, n),
/// stored canonically.
struct RelationRecord {
  int outputs = 0;
  int inputs = 0;
  LinComb terms;

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

struct Presentation {
  std::string name;
  std::string description;
  std::vector<Generator> generators;
  std::vector<RelationRecord> relations;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Validates a presentation; returns a diagnostic or nullopt.
std::optional<std::string> validate_presentation(const Presentation& p);

/// Basis of a weight slice, optionally with the projection from the free
/// slice onto the quotient (rows: quotient basis, columns: free basis).
struct GradedComponentBasis {
  int m = 0, n = 0, weight = 0;
  std::vector<Code> basis;
  std::vector<Code> free_basis;
  std::optional<RationalMatrix> quotient_projection;

  std::size_t dim() const { return basis.size(); }
};

GradedComponentBasis free_prop_component(GeneratorTable gens, int m, int n, int weight,
                                         bool connected_only = true);

/// Quadratic PROP F(V)/(R) with its closed relation spaces and a memo of
/// computed weight slices (safe for concurrent use).
class QuadraticProp {
 public:
  explicit QuadraticProp(Presentation p);

  const Presentation& presentation() const { return pres_; }
  GeneratorTable generators() const { return pres_.generators; }
  const RelationTable& relations() const { return table_; }
  CellContext context() const { return {generators(), &table_}; }
  /// dim R(m, n) as a sub-S-bimodule of the weight-2 free slice.
  std::size_t relation_dim(int m, int n) const;

  /// Connected weight slice of P(m, n) (the unit strand for weight 0).
  const QuotientSpace& quotient(int m, int n, int weight) const;

 private:
  Presentation pres_;
  RelationTable table_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int>, std::shared_future<std::shared_ptr<QuotientSpace>>> memo_;
};

GradedComponentBasis quotient_component(const QuadraticProp& p, int m, int n, int weight,
                                        const TruncationParams& trunc);

/// Composition product: connected (or all) 2-level graphs whose level-2
/// (output side) vertices are decorated by `top` and level-1 vertices by
/// `bottom`, with unit strands.
GradedComponentBasis composition_product(std::span<const Generator> top, std::span<const Generator> bottom,
                                         int m, int n, bool connected_only);

/// The unit strand of arity (1, 1).
Graph unit_strand();

/// Vertical grafting: outputs of `bottom` feed the inputs of `top`.
Graph graft(const Graph& top, const Graph& bottom);
/// Partial grafting a o_{i,j} b: output j of b feeds input i of a (0-based).
/// Inputs of the result: a.in[<i], b.in, a.in[>i]; outputs: b.out[<j], a.out, b.out[>j].
Graph graft_partial(const Graph& a, int i, const Graph& b, int j);

/// Grafts representatives and reduces in the quotient; the result is
/// expressed on quotient basis cells. Throws std::out_of_range when the
/// composite weight exceeds the truncation.
LinComb compose_in_quotient(const QuadraticProp& p, const LinComb& top, const LinComb& bottom,
                            const TruncationParams& trunc);
LinComb compose_partial_in_quotient(const QuadraticProp& p, const LinComb& a, int i, const LinComb& b,
                                    int j, const TruncationParams& trunc);

/// Normal form of a combination of plain graphs in the quotient.
LinComb reduce_in_quotient(const QuadraticProp& p, const LinComb& x);

}  // namespace propkoszul
