#pragma once

// Symmetric groups and S-bimodules: based rational modules with a left S_m
// action and a right S_n action, stored on adjacent transpositions.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "propkoszul/linalg.hpp"

namespace propkoszul {

/// A bijection of {1..n}, stored 0-based: image[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless images is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Adjacent transposition s_i = (i, i+1), 0-based i.
  static Permutation adjacent(int n, int i);
  /// 1-based image list, e.g. {2,1,3}.
  static Permutation from_one_based(const std::vector<int>& images);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  int sign() const;
  bool is_identity() const;
  /// Word in adjacent transpositions s_{i1} ... s_{ik} whose product is *this.
  std::vector<int> adjacent_word() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (a o b)(i) = a(b(i)). Throws std::invalid_argument on size mismatch.
Permutation compose_perms(const Permutation& a, const Permutation& b);

/// All permutations of {0..n-1} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

enum class Symmetry { Trivial, Sign, Regular };

std::string to_string(Symmetry s);
/// Accepts "trivial", "sign", "regular"; throws std::invalid_argument otherwise.
Symmetry parse_symmetry(const std::string& s);

/// P(m,n): a based module with actions of the adjacent transpositions.
struct SBimoduleComponent {
  int m = 0;
  int n = 0;
  std::size_t dim = 0;
  std::vector<RationalMatrix> left_action;   // size m-1, action of s_i in S_m
  std::vector<RationalMatrix> right_action;  // size n-1, action of s_i in S_n

  /// Checks involutions, braid relations and that the two actions commute.
  bool satisfies_axioms() const;
};

/// Applies left·v·right. The right action is by S_n^op: acting by
/// compose_perms(a, b) equals acting by a first, then by b.
/// Throws std::invalid_argument on arity mismatch.
SparseVec act(const SBimoduleComponent& c, const Permutation& left, const SparseVec& v,
              const Permutation& right);

struct SBimodule {
  std::map<std::pair<int, int>, SBimoduleComponent> components;

  std::size_t dim(int m, int n) const;
};

/// Ĩ: k[S_n] in bidegree (n,n) with both regular actions, zero elsewhere.
SBimodule identity_bimodule(int max_arity);

/// Cyclic component generated by one element with the given left and right
/// symmetry types (dim = dim(left) * dim(right)).
SBimoduleComponent cyclic_component(int m, int n, Symmetry left, Symmetry right);

}  // namespace propkoszul
