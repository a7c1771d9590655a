#pragma once

// P-gebras: a presentation realized on a finite-dimensional space A by one
// matrix A^{(x)n} -> A^{(x)m} per generator, checked against the relations.
//
// Tensor multi-indices are flattened big-endian: the first leg is the most
// significant digit.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "propkoszul/linalg.hpp"
#include "propkoszul/propcalc.hpp"

namespace propkoszul {

struct GebraStructure {
  int dimension = 0;
  /// generator id -> matrix of shape dimension^outputs x dimension^inputs
  std::map<std::string, RationalMatrix> maps;
};

/// Document format: {"dimension": d, "maps": [{"generator": id,
/// "entries": [[[out multi-index], [in multi-index], "q"], ...]}]} with
/// 1-based indices. Generators without a map act by zero.
GebraStructure parse_gebra_structure(const std::string& document, const Presentation& p);
GebraStructure load_gebra_file(const std::string& path, const Presentation& p);

std::vector<int> unflatten_index(std::size_t flat, int legs, int dimension);
std::size_t flatten_index(const std::vector<int>& multi, int dimension);

/// Value of a plain graph in End(A). Throws std::invalid_argument on shape
/// mismatch.
RationalMatrix evaluate_graph(const Graph& g, const Presentation& p, const GebraStructure& s);

struct GebraWitness {
  std::vector<int> out;  // 1-based multi-indices
  std::vector<int> in;
  Rational value;
};

struct GebraCheckEntry {
  std::string name;  // "symmetry <gen>" or "relation k (m,n)"
  bool pass = true;
  std::optional<GebraWitness> witness;
};

struct GebraReport {
  std::string presentation;
  std::vector<GebraCheckEntry> entries;
  bool pass() const;
};

/// Checks that each generator map is equivariant for its declared symmetries
/// and that every relation evaluates to zero.
GebraReport gebra_check(const Presentation& p, const GebraStructure& s);

/// Transports the structure along the invertible change of basis `b`:
/// f -> b^{(x)m} f (b^{-1})^{(x)n}.
GebraStructure base_change(const GebraStructure& s, const Presentation& p, const RationalMatrix& b);

}  // namespace propkoszul
