#pragma once

// Koszul dual coPROP, Koszul complexes and the criterion checks at a finite
// truncation.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "propkoszul/barcobar.hpp"
#include "propkoszul/propcalc.hpp"

namespace propkoszul {

/// P^¡(m, n) in weight w: cycles of the top-degree bar component (all
/// clusters single generators).
struct KoszulDualComponent {
  int m = 0, n = 0, weight = 0;
  QuotientSpace cells;
  RationalMatrix basis;  // columns in cell coordinates

  std::size_t dim() const { return basis.cols(); }
};

KoszulDualComponent koszul_dual_component(const QuadraticProp& p, int m, int n, int weight);

struct KoszulDual {
  /// (m, n, weight) -> dim P^¡(m, n)_(weight)
  std::map<std::tuple<int, int, int>, std::size_t> dims;
  std::size_t dim(int m, int n, int weight) const;
};

KoszulDual koszul_dual(const QuadraticProp& p, const TruncationParams& trunc);

enum class KoszulSide {
  kDualOnTop,     // P^¡ ⊠ P: the dual stage on the output side
  kDualOnBottom,  // P ⊠ P^¡
};

/// Weight-w slice of the Koszul complex; degree i is the weight of the dual
/// stage (0..w).
ChainComplex koszul_complex(const QuadraticProp& p, int m, int n, int weight, KoszulSide side);

/// Weight-w slice of B(P) ⊠ P twisted by the canonical twisting morphism;
/// degree k is the number of bar clusters (0..w).
ChainComplex augmented_bar_complex(const QuadraticProp& p, int m, int n, int weight);

/// Homology of one weight slice of one complex.
struct SliceHomology {
  int m = 0, n = 0, weight = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> homology;
  bool ok = true;  // the slice satisfies the property being tested
};

struct Witness {
  std::string complex;
  int m = 0, n = 0, weight = 0, degree = 0;
  std::size_t dim = 0;
};

struct KoszulReport {
  std::string presentation;
  TruncationParams trunc;
  std::vector<SliceHomology> koszul;    // P^¡ ⊠ P, acyclic in positive weight
  std::vector<SliceHomology> mirrored;  // P ⊠ P^¡
  std::vector<SliceHomology> bar;       // concentrated in top degree = dim P^¡
  bool koszul_acyclic = true;
  bool mirrored_acyclic = true;
  bool bar_concentrated = true;
  std::optional<Witness> witness;

  bool coherent() const { return koszul_acyclic == mirrored_acyclic && mirrored_acyclic == bar_concentrated; }
  bool positive() const { return koszul_acyclic && mirrored_acyclic && bar_concentrated; }
};

/// Components (m, n) admitted by the truncation, in graded-lex order on m + n.
std::vector<std::pair<int, int>> truncation_components(const TruncationParams& trunc,
                                                       std::optional<std::pair<int, int>> only = {});

KoszulReport koszul_check(const QuadraticProp& p, const TruncationParams& trunc,
                          std::optional<std::pair<int, int>> only = {}, int jobs = 1);

struct AcyclicityReport {
  std::string presentation;
  TruncationParams trunc;
  std::vector<SliceHomology> slices;
  bool acyclic = true;
  std::optional<Witness> witness;
};

AcyclicityReport augmented_bar_acyclicity(const QuadraticProp& p, const TruncationParams& trunc,
                                          std::optional<std::pair<int, int>> only = {}, int jobs = 1);

struct BarCobarReport {
  std::string presentation;
  TruncationParams trunc;
  std::vector<SliceHomology> slices;  // ok: concentrated in degree 0 with dim P
  std::vector<std::size_t> quotient_dims;
  bool resolution = true;
  std::optional<Witness> witness;
};

BarCobarReport bar_cobar_check(const QuadraticProp& p, const TruncationParams& trunc,
                               std::optional<std::pair<int, int>> only = {}, int jobs = 1);

/// d^2 verification for the bar, cobar and both Koszul complexes.
struct D2Entry {
  std::string complex;
  int m = 0, n = 0, weight = 0;
  std::optional<std::size_t> failure;  // first degree with d^2 != 0
  std::string error;                   // assembly failure (boundary leaving the dual)

  bool ok() const { return !failure && error.empty(); }
};

struct D2Report {
  std::string presentation;
  TruncationParams trunc;
  std::vector<D2Entry> entries;
  bool all_zero() const;
};

D2Report d2_check(const QuadraticProp& p, const TruncationParams& trunc,
                  std::optional<std::pair<int, int>> only = {}, int jobs = 1);

}  // namespace propkoszul
