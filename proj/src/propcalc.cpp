#include "propkoszul/propcalc.hpp"

#include <set>
#include <stdexcept>

#include "propkoszul/enumerate.hpp"

namespace propkoszul {

std::optional<std::string> validate_presentation(const Presentation& p) {
  std::set<std::string> ids;
  for (const auto& g : p.generators) {
    if (g.id.empty()) return "generator with empty id";
    if (!ids.insert(g.id).second) return "duplicate generator id '" + g.id + "'";
    if (g.outputs < 1 || g.inputs < 1) return "generator '" + g.id + "' needs at least one input and one output";
  }
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const auto& rel = p.relations[r];
    const std::string where = "relation " + std::to_string(r + 1);
    if (rel.terms.empty()) return where + " is zero";
    for (const auto& [code, coef] : rel.terms) {
      Graph g = decode(code);
      if (g.outputs != rel.outputs || g.inputs != rel.inputs) return where + ": term arity mismatch";
      if (g.weight() != 2) return where + ": relation terms must have exactly 2 vertices";
      for (const auto& v : g.vertices)
        if (v.gen < 0 || v.gen >= static_cast<int>(p.generators.size())) return where + ": unknown generator";
      if (auto err = check_well_formed(g, p.generators)) return where + ": " + *err;
      if (!is_connected(g)) return where + ": relation graphs must be connected";
    }
  }
  return std::nullopt;
}

GradedComponentBasis free_prop_component(GeneratorTable gens, int m, int n, int weight, bool connected_only) {
  GradedComponentBasis b;
  b.m = m;
  b.n = n;
  b.weight = weight;
  b.free_basis = enumerate_free(gens, weight, m, n, connected_only);
  b.basis = b.free_basis;
  return b;
}

QuadraticProp::QuadraticProp(Presentation p) : pres_(std::move(p)) {
  if (auto err = validate_presentation(pres_)) throw std::invalid_argument(*err);
  GeneratorTable gens = pres_.generators;
  std::map<std::pair<int, int>, std::vector<const RelationRecord*>> by_arity;
  for (const auto& r : pres_.relations) by_arity[{r.outputs, r.inputs}].push_back(&r);
  for (const auto& [arity, records] : by_arity) {
    auto [a, b] = arity;
    CellSpace slice(enumerate_connected(gens, 2, a, b));
    Echelon ech(slice.size());
    auto& basis = table_[arity];
    auto sigmas = all_permutations(a);
    auto taus = all_permutations(b);
    for (const auto* rec : records)
      for (const auto& s : sigmas)
        for (const auto& t : taus) {
          LinComb moved;
          for (const auto& [code, coef] : rec->terms) add_term(moved, relabel_legs(decode(code), s, t), coef, gens);
          if (moved.empty()) continue;
          if (ech.insert(slice.to_vector(moved))) basis.push_back(std::move(moved));
        }
    if (basis.empty()) table_.erase(arity);
  }
}

std::size_t QuadraticProp::relation_dim(int m, int n) const {
  auto it = table_.find({m, n});
  return it == table_.end() ? 0 : it->second.size();
}

const QuotientSpace& QuadraticProp::quotient(int m, int n, int weight) const {
  std::promise<std::shared_ptr<QuotientSpace>> promise;
  std::shared_future<std::shared_ptr<QuotientSpace>> fut;
  bool compute = false;
  {
    std::lock_guard lock(mu_);
    auto key = std::make_tuple(m, n, weight);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      fut = promise.get_future().share();
      memo_.emplace(key, fut);
      compute = true;
    } else {
      fut = it->second;
    }
  }
  if (compute) {
    try {
      promise.set_value(std::make_shared<QuotientSpace>(CellSpace(enumerate_connected(generators(), weight, m, n)),
                                                        context()));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return *fut.get();
}

GradedComponentBasis quotient_component(const QuadraticProp& p, int m, int n, int weight,
                                        const TruncationParams& trunc) {
  if (weight > trunc.max_weight) throw std::out_of_range("weight exceeds the truncation");
  const QuotientSpace& q = p.quotient(m, n, weight);
  GradedComponentBasis b;
  b.m = m;
  b.n = n;
  b.weight = weight;
  b.free_basis = q.ambient().codes();
  for (std::size_t i = 0; i < q.dim(); ++i) b.basis.push_back(q.ambient().code(q.cell(i)));
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < q.ambient().size(); ++j) cols.push_back(q.project(SparseVec{{j, Rational(1)}}));
  b.quotient_projection = RationalMatrix::from_columns(q.dim(), std::move(cols));
  return b;
}

GradedComponentBasis composition_product(std::span<const Generator> top, std::span<const Generator> bottom,
                                         int m, int n, bool connected_only) {
  std::vector<Generator> gens(top.begin(), top.end());
  gens.insert(gens.end(), bottom.begin(), bottom.end());
  std::vector<int> t(top.size()), b(bottom.size());
  for (std::size_t i = 0; i < top.size(); ++i) t[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < bottom.size(); ++i) b[i] = static_cast<int>(top.size() + i);
  GradedComponentBasis out;
  out.m = m;
  out.n = n;
  out.weight = -1;
  out.basis = enumerate_two_level(gens, t, b, m, n, connected_only);
  out.free_basis = out.basis;
  return out;
}

Graph unit_strand() {
  Graph g;
  g.outputs = 1;
  g.inputs = 1;
  g.out = {{kGlobal, 0}};
  return g;
}

namespace {

/// Disjoint union with `second`'s vertices after `first`'s; returns the
/// vertex offset of `second`.
Graph juxtapose(const Graph& first, const Graph& second, int& offset) {
  Graph h = first;
  offset = first.weight();
  const int nb = static_cast<int>(first.blocks.size());
  const int ns = static_cast<int>(first.sub_degree.size());
  h.blocks.insert(h.blocks.end(), second.blocks.begin(), second.blocks.end());
  h.sub_degree.insert(h.sub_degree.end(), second.sub_degree.begin(), second.sub_degree.end());
  for (Vertex v : second.vertices) {
    v.block += nb;
    v.sub += ns;
    for (auto& s : v.in)
      if (s.vertex != kGlobal) s.vertex += offset;
    h.vertices.push_back(std::move(v));
  }
  return h;
}

}  // namespace

Graph graft(const Graph& top, const Graph& bottom) {
  if (top.inputs != bottom.outputs) throw std::invalid_argument("grafting arity mismatch");
  int off = 0;
  Graph h = juxtapose(bottom, top, off);
  h.outputs = top.outputs;
  h.inputs = bottom.inputs;
  auto through = [&](PortRef s) -> PortRef {
    // s is a source inside `top` (already shifted for vertices).
    if (s.vertex == kGlobal) return bottom.out[s.port];
    return s;
  };
  for (int v = off; v < h.weight(); ++v)
    for (auto& s : h.vertices[v].in) s = through(s);
  h.out.clear();
  for (PortRef s : top.out) {
    if (s.vertex != kGlobal) s.vertex += off;
    h.out.push_back(through(s));
  }
  return h;
}

Graph graft_partial(const Graph& a, int i, const Graph& b, int j) {
  if (i < 0 || i >= a.inputs || j < 0 || j >= b.outputs) throw std::invalid_argument("grafting port out of range");
  int off = 0;
  Graph h = juxtapose(b, a, off);
  h.inputs = a.inputs - 1 + b.inputs;
  h.outputs = b.outputs - 1 + a.outputs;
  // Inputs: a.in[<i], b.in, a.in[>i].
  auto b_input = [&](int k) { return PortRef{kGlobal, i + k}; };
  auto a_input = [&](int k) -> PortRef {
    if (k < i) return {kGlobal, k};
    if (k == i) {
      PortRef s = b.out[j];
      return s.vertex == kGlobal ? b_input(s.port) : s;
    }
    return {kGlobal, k - 1 + b.inputs};
  };
  for (int v = 0; v < off; ++v)
    for (auto& s : h.vertices[v].in)
      if (s.vertex == kGlobal) s = b_input(s.port);
  for (int v = off; v < h.weight(); ++v)
    for (auto& s : h.vertices[v].in)
      if (s.vertex == kGlobal) s = a_input(s.port);
  // Outputs: b.out[<j], a.out, b.out[>j].
  auto b_source = [&](PortRef s) { return s.vertex == kGlobal ? b_input(s.port) : s; };
  auto a_source = [&](PortRef s) {
    if (s.vertex == kGlobal) return a_input(s.port);
    s.vertex += off;
    return s;
  };
  h.out.clear();
  for (int k = 0; k < j; ++k) h.out.push_back(b_source(b.out[k]));
  for (const auto& s : a.out) h.out.push_back(a_source(s));
  for (int k = j + 1; k < b.outputs; ++k) h.out.push_back(b_source(b.out[k]));
  return h;
}

LinComb reduce_in_quotient(const QuadraticProp& p, const LinComb& x) {
  if (x.empty()) return {};
  Graph first = decode(x.begin()->first);
  const QuotientSpace& q = p.quotient(first.outputs, first.inputs, first.weight());
  return q.lift(q.project(x));
}

namespace {

LinComb compose_terms(const QuadraticProp& p, const LinComb& a, const LinComb& b, const TruncationParams& trunc,
                      const std::function<Graph(const Graph&, const Graph&)>& op) {
  LinComb raw;
  for (const auto& [ca, xa] : a) {
    Graph ga = decode(ca);
    for (const auto& [cb, xb] : b) {
      Graph gb = decode(cb);
      if (ga.weight() + gb.weight() > trunc.max_weight)
        throw std::out_of_range("composite weight exceeds the truncation");
      add_term(raw, op(ga, gb), xa * xb, p.generators());
    }
  }
  for (const auto& [code, c] : raw) {
    Graph g = decode(code);
    if (!is_connected(g)) throw std::invalid_argument("composite is not connected");
    if (!trunc.admits(g.outputs, g.inputs) && g.weight() > 0)
      throw std::out_of_range("composite arity exceeds the truncation");
  }
  return reduce_in_quotient(p, raw);
}

}  // namespace

LinComb compose_in_quotient(const QuadraticProp& p, const LinComb& top, const LinComb& bottom,
                            const TruncationParams& trunc) {
  return compose_terms(p, top, bottom, trunc, [](const Graph& t, const Graph& b) { return graft(t, b); });
}

LinComb compose_partial_in_quotient(const QuadraticProp& p, const LinComb& a, int i, const LinComb& b, int j,
                                    const TruncationParams& trunc) {
  return compose_terms(p, a, b, trunc,
                       [i, j](const Graph& x, const Graph& y) { return graft_partial(x, i, y, j); });
}

}  // namespace propkoszul
