#pragma once

// Bar construction B(P) and cobar construction of the Koszul dual, as
// weight-graded chain complexes per component.
//
// A bar cell of degree k is a connected graph of generators cut into k
// connected clusters, each a suspended element of the augmentation ideal.
// Its differential contracts pairs of adjacent clusters through the partial
// product. Cobar cells cut the graph into desuspended clusters of
// cogenerators, each constrained to lie in the Koszul dual, and the
// differential splits a cluster in two.

#include "propkoszul/cells.hpp"
#include "propkoszul/propcalc.hpp"

namespace propkoszul {

/// Composite of the adjacent vertices u, v of a plain graph as an element of
/// P in the arity of the merged vertex, on quotient basis cells. Legs follow
/// contract_edge_pair's port order.
LinComb partial_product(const QuadraticProp& p, const Graph& g, int u, int v);

/// Weight-w slice of B(P)(m, n). levels[k] is degree k (k clusters); level 0
/// is empty.
struct BarComplex {
  int m = 0, n = 0, weight = 0;
  std::vector<ComplexLevel> levels;
  ChainComplex complex;
};

/// Bar cells with `clusters` suspended clusters of total weight w.
CellSpace bar_cells(const QuadraticProp& p, int m, int n, int weight, int clusters);

BarComplex bar_complex(const QuadraticProp& p, int m, int n, int weight);

/// Matrix of d_theta from degree k to degree k-1 in the weight-w slice.
RationalMatrix bar_boundary(const QuadraticProp& p, int m, int n, int weight, int k);

/// Differential of a single bar cell.
LinComb bar_differential(const Graph& cell, GeneratorTable gens);

/// Weight-w slice of the cobar construction of the Koszul dual. levels[d] is
/// degree d = w - (number of clusters).
struct CobarComplex {
  int m = 0, n = 0, weight = 0;
  std::vector<ComplexLevel> levels;
  ChainComplex complex;
};

CobarComplex cobar_complex(const QuadraticProp& p, int m, int n, int weight);

LinComb cobar_differential(const Graph& cell, GeneratorTable gens);

}  // namespace propkoszul
