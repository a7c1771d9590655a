#include "propkoszul/sbimodule.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace propkoszul {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x])
      throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::adjacent(int n, int i) {
  if (i < 0 || i + 1 >= n) throw std::invalid_argument("adjacent transposition out of range");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::swap(v[i], v[i + 1]);
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> v(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) v[i] = images[i] - 1;
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

int Permutation::sign() const {
  int s = 1;
  for (std::size_t i = 0; i < images_.size(); ++i)
    for (std::size_t j = i + 1; j < images_.size(); ++j)
      if (images_[i] > images_[j]) s = -s;
  return s;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> Permutation::adjacent_word() const {
  // Bubble sort by right multiplication: p o s_a1 o ... o s_ak = id, so
  // p = s_ak o ... o s_a1.
  std::vector<int> img = images_;
  std::vector<int> swaps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < img.size(); ++i) {
      if (img[i] > img[i + 1]) {
        std::swap(img[i], img[i + 1]);
        swaps.push_back(static_cast<int>(i));
        changed = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Permutation compose_perms(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> v(a.size());
  for (int i = 0; i < a.size(); ++i) v[i] = a(b(i));
  return Permutation(std::move(v));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Trivial: return "trivial";
    case Symmetry::Sign: return "sign";
    case Symmetry::Regular: return "regular";
  }
  return "?";
}

Symmetry parse_symmetry(const std::string& s) {
  if (s == "trivial") return Symmetry::Trivial;
  if (s == "sign") return Symmetry::Sign;
  if (s == "regular") return Symmetry::Regular;
  throw std::invalid_argument("unknown symmetry '" + s + "'");
}

namespace {

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t perm_index(const std::vector<Permutation>& all, const Permutation& p) {
  return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin());
}

/// Matrix of s_i acting on one side of a representation of the given type.
RationalMatrix side_generator(Symmetry type, int n, int i, bool on_left) {
  switch (type) {
    case Symmetry::Trivial: return RationalMatrix::identity(1);
    case Symmetry::Sign: {
      RationalMatrix m(1, 1);
      m.set(0, 0, -1);
      return m;
    }
    case Symmetry::Regular: {
      auto all = all_permutations(n);
      Permutation s = Permutation::adjacent(n, i);
      RationalMatrix m(all.size(), all.size());
      for (std::size_t c = 0; c < all.size(); ++c) {
        Permutation img = on_left ? compose_perms(s, all[c]) : compose_perms(all[c], s);
        m.set(perm_index(all, img), c, 1);
      }
      return m;
    }
  }
  return {};
}

std::size_t side_dim(Symmetry type, int n) {
  return type == Symmetry::Regular ? factorial(n) : 1;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ca = 0; ca < a.cols(); ++ca)
    for (const auto& [ra, va] : a.column(ca))
      for (std::size_t cb = 0; cb < b.cols(); ++cb)
        for (const auto& [rb, vb] : b.column(cb))
          out.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
  return out;
}

bool commute(const RationalMatrix& a, const RationalMatrix& b) { return a * b == b * a; }

bool coxeter_relations(const std::vector<RationalMatrix>& gens, std::size_t dim) {
  RationalMatrix id = RationalMatrix::identity(dim);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!(gens[i] * gens[i] == id)) return false;
    if (i + 1 < gens.size()) {
      const auto& a = gens[i];
      const auto& b = gens[i + 1];
      if (!(a * b * a == b * a * b)) return false;
    }
    for (std::size_t j = i + 2; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j])) return false;
  }
  return true;
}

}  // namespace

bool SBimoduleComponent::satisfies_axioms() const {
  if (static_cast<int>(left_action.size()) != std::max(m - 1, 0)) return false;
  if (static_cast<int>(right_action.size()) != std::max(n - 1, 0)) return false;
  for (const auto& g : left_action)
    if (g.rows() != dim || g.cols() != dim) return false;
  for (const auto& g : right_action)
    if (g.rows() != dim || g.cols() != dim) return false;
  if (!coxeter_relations(left_action, dim) || !coxeter_relations(right_action, dim)) return false;
  for (const auto& l : left_action)
    for (const auto& r : right_action)
      if (!commute(l, r)) return false;
  return true;
}

SparseVec act(const SBimoduleComponent& c, const Permutation& left, const SparseVec& v,
              const Permutation& right) {
  if (left.size() != c.m || right.size() != c.n)
    throw std::invalid_argument("permutation arity does not match component");
  SparseVec out = v;
  // v . (s_j1 s_j2 ...) = ((v . s_j1) . s_j2) ...
  for (int j : right.adjacent_word()) out = c.right_action[j].apply(out);
  // (s_i1 s_i2 ...) . v = s_i1 . (s_i2 . (... v))
  auto word = left.adjacent_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = c.left_action[*it].apply(out);
  return out;
}

std::size_t SBimodule::dim(int m, int n) const {
  auto it = components.find({m, n});
  return it == components.end() ? 0 : it->second.dim;
}

SBimodule identity_bimodule(int max_arity) {
  if (max_arity < 1) throw std::invalid_argument("max_arity must be >= 1");
  SBimodule out;
  for (int n = 1; n <= max_arity; ++n) {
    SBimoduleComponent c;
    c.m = c.n = n;
    c.dim = factorial(n);
    for (int i = 0; i + 1 < n; ++i) {
      c.left_action.push_back(side_generator(Symmetry::Regular, n, i, true));
      c.right_action.push_back(side_generator(Symmetry::Regular, n, i, false));
    }
    out.components[{n, n}] = std::move(c);
  }
  return out;
}

SBimoduleComponent cyclic_component(int m, int n, Symmetry left, Symmetry right) {
  SBimoduleComponent c;
  c.m = m;
  c.n = n;
  std::size_t dl = side_dim(left, m);
  std::size_t dr = side_dim(right, n);
  c.dim = dl * dr;
  for (int i = 0; i + 1 < m; ++i)
    c.left_action.push_back(kron(side_generator(left, m, i, true), RationalMatrix::identity(dr)));
  for (int i = 0; i + 1 < n; ++i)
    c.right_action.push_back(kron(RationalMatrix::identity(dl), side_generator(right, n, i, false)));
  return c;
}

}  // namespace propkoszul
