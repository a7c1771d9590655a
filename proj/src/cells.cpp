#include "propkoszul/cells.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace propkoszul {

// ---------------------------------------------------------------------------
// Cell spaces and quotients

CellSpace::CellSpace(std::vector<Code> codes) : codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  for (std::size_t i = 0; i < codes_.size(); ++i) index_.emplace(codes_[i], i);
}

std::optional<std::size_t> CellSpace::find(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVec CellSpace::to_vector(const LinComb& lc) const {
  std::vector<std::pair<std::size_t, Rational>> entries;
  entries.reserve(lc.size());
  for (const auto& [code, coef] : lc) {
    auto i = find(code);
    if (!i) throw std::logic_error("term outside the cell space");
    entries.emplace_back(*i, coef);
  }
  return make_sparse(std::move(entries));
}

bool relation_scope(const Graph& g, int u, int v) {
  const auto& a = g.vertices[u];
  const auto& b = g.vertices[v];
  if (g.blocks[a.block].kind == kPlain && g.blocks[b.block].kind == kPlain) return true;
  if (a.block != b.block) return false;
  int kind = g.blocks[a.block].kind;
  if (kind == kBarBlock || kind == kCoPair) return true;
  if (kind == kCobarBlock && a.sub == b.sub) return true;
  return false;
}

namespace {

/// External legs of a contractible pair and where its outputs go.
struct Hole {
  std::vector<PortRef> in;        // sources feeding the pair from outside
  std::vector<PortRef> consumer;  // per hole output: (vertex, in-slot) or (kGlobal, output)
};

Hole hole_of(const Graph& g, int u, int v) {
  std::map<PortRef, PortRef> consumer_of;
  for (int w = 0; w < g.weight(); ++w)
    for (std::size_t j = 0; j < g.vertices[w].in.size(); ++j)
      consumer_of[g.vertices[w].in[j]] = {w, static_cast<int>(j)};
  for (int k = 0; k < g.outputs; ++k) consumer_of[g.out[k]] = {kGlobal, k};

  Hole h;
  for (int x : {u, v})
    for (const auto& s : g.vertices[x].in)
      if (s.vertex != u && s.vertex != v) h.in.push_back(s);
  for (int x : {u, v})
    for (int q = 0; q < g.vertices[x].outputs; ++q) {
      PortRef c = consumer_of.at({x, q});
      if (c.vertex == u || c.vertex == v) continue;
      h.consumer.push_back(c);
    }
  return h;
}

}  // namespace

LinComb substitute_relation(const Graph& g, int u, int v, const LinComb& relation,
                            GeneratorTable gens) {
  Hole h = hole_of(g, u, v);
  LinComb out;
  for (const auto& [code, coef] : relation) {
    Graph t = decode(code);
    if (t.weight() != 2 || t.inputs != static_cast<int>(h.in.size()) ||
        t.outputs != static_cast<int>(h.consumer.size()))
      throw std::logic_error("relation term does not fit the contracted pair");
    const int slot[2] = {u, v};
    auto map_src = [&](const PortRef& s) -> PortRef {
      if (s.vertex == kGlobal) return h.in[s.port];
      return {slot[s.vertex], s.port};
    };
    Graph r = g;
    for (int i = 0; i < 2; ++i) {
      Vertex& nv = r.vertices[slot[i]];
      nv.gen = t.vertices[i].gen;
      nv.outputs = t.vertices[i].outputs;
      nv.in.clear();
      for (const auto& s : t.vertices[i].in) nv.in.push_back(map_src(s));
    }
    for (std::size_t k = 0; k < h.consumer.size(); ++k) {
      if (t.out[k].vertex == kGlobal) throw std::logic_error("relation term with a bare strand");
      PortRef src = map_src(t.out[k]);
      const PortRef& c = h.consumer[k];
      if (c.vertex == kGlobal)
        r.out[c.port] = src;
      else
        r.vertices[c.vertex].in[c.port] = src;
    }
    add_term(out, r, coef, gens);
  }
  return out;
}

std::vector<LinComb> ideal_generators(const Graph& g, const CellContext& ctx) {
  std::vector<LinComb> out;
  if (ctx.relations == nullptr || ctx.relations->empty()) return out;
  for (auto [u, v] : contractible_pairs(g)) {
    if (!relation_scope(g, u, v)) continue;
    Hole h = hole_of(g, u, v);
    auto it = ctx.relations->find({static_cast<int>(h.consumer.size()), static_cast<int>(h.in.size())});
    if (it == ctx.relations->end()) continue;
    for (const auto& rel : it->second) {
      LinComb lc = substitute_relation(g, u, v, rel, ctx.gens);
      if (!lc.empty()) out.push_back(std::move(lc));
    }
  }
  return out;
}

QuotientSpace::QuotientSpace(CellSpace ambient, const CellContext& ctx, bool apply_relations)
    : ambient_(std::move(ambient)), ideal_(ambient_.size()) {
  if (apply_relations)
    for (const auto& code : ambient_.codes())
      for (const auto& lc : ideal_generators(decode(code), ctx)) ideal_.insert(ambient_.to_vector(lc));
  quotient_index_.assign(ambient_.size(), -1);
  for (std::size_t i = 0; i < ambient_.size(); ++i)
    if (!ideal_.is_pivot(i)) {
      quotient_index_[i] = static_cast<long>(basis_cells_.size());
      basis_cells_.push_back(i);
    }
}

SparseVec QuotientSpace::project(const SparseVec& ambient_vector) const {
  SparseVec r = ideal_.reduce(ambient_vector);
  SparseVec out;
  out.reserve(r.size());
  for (auto& [i, c] : r) {
    long q = quotient_index_[i];
    if (q < 0) throw std::logic_error("reduction left a pivot entry");
    out.emplace_back(static_cast<std::size_t>(q), std::move(c));
  }
  return out;
}

LinComb QuotientSpace::lift(const SparseVec& quotient_vector) const {
  LinComb out;
  for (const auto& [q, c] : quotient_vector) add_to(out, ambient_.code(basis_cells_[q]), c);
  return out;
}

CellSpace relation_closure(const std::vector<Code>& seeds, const CellContext& ctx) {
  std::set<Code> all(seeds.begin(), seeds.end());
  std::deque<Code> work(all.begin(), all.end());
  while (!work.empty()) {
    Code c = std::move(work.front());
    work.pop_front();
    for (const auto& lc : ideal_generators(decode(c), ctx))
      for (const auto& [code, coef] : lc)
        if (all.insert(code).second) work.push_back(code);
  }
  return CellSpace(std::vector<Code>(all.begin(), all.end()));
}

LinComb apply_cellwise(const QuotientSpace& q, const SparseVec& v, const CellMap& f) {
  LinComb out;
  for (const auto& [i, c] : v) {
    LinComb img = f(decode(q.ambient().code(q.cell(i))));
    for (const auto& [code, a] : img) add_to(out, code, c * a);
  }
  return out;
}

RationalMatrix constrained_subspace(const QuotientSpace& q, const CellMap& constraint,
                                    const CellContext& ctx) {
  std::vector<LinComb> images(q.dim());
  std::vector<Code> seeds;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    images[i] = constraint(decode(q.ambient().code(q.cell(i))));
    for (const auto& [code, c] : images[i]) seeds.push_back(code);
  }
  QuotientSpace target(relation_closure(seeds, ctx), ctx);
  std::vector<SparseVec> cols;
  cols.reserve(q.dim());
  for (const auto& img : images) cols.push_back(target.project(img));
  return kernel_basis(RationalMatrix::from_columns(target.dim(), std::move(cols)));
}

ChainComplex assemble_complex(const std::vector<ComplexLevel>& levels, const CellMap& d) {
  ChainComplex cc;
  for (const auto& l : levels) cc.dims.push_back(l.dim());
  if (levels.empty()) return cc;
  cc.boundaries.emplace_back(0, cc.dims[0]);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const auto& src = levels[i];
    const auto& dst = levels[i - 1];
    std::optional<TrackingEchelon> coords;
    if (dst.subspace) {
      coords.emplace(dst.space.dim());
      for (std::size_t c = 0; c < dst.subspace->cols(); ++c) coords->insert(dst.subspace->column(c));
    }
    std::vector<SparseVec> cols;
    for (std::size_t c = 0; c < src.dim(); ++c) {
      SparseVec x = src.subspace ? src.subspace->column(c) : SparseVec{{c, Rational(1)}};
      SparseVec y = dst.space.project(apply_cellwise(src.space, x, d));
      if (coords) {
        auto k = coords->coordinates(std::move(y));
        if (!k)
          throw std::logic_error("boundary leaves the subspace at degree " + std::to_string(i - 1));
        y = std::move(*k);
      }
      cols.push_back(std::move(y));
    }
    cc.boundaries.push_back(RationalMatrix::from_columns(dst.dim(), std::move(cols)));
  }
  return cc;
}

// ---------------------------------------------------------------------------
// Structural operations

namespace {

struct SubLayout {
  int degree = 0;
  int id = -1;  // original sub id, -1 for a fresh sub
  std::vector<int> verts;
};
struct BlockLayout {
  Block attr;
  int id = -1;
  std::vector<SubLayout> subs;
};

std::vector<BlockLayout> layout_of(const Graph& g) {
  std::vector<BlockLayout> out;
  int pb = -1, ps = -1;
  for (int v = 0; v < g.weight(); ++v) {
    const auto& vx = g.vertices[v];
    if (vx.block != pb) {
      out.push_back({g.blocks[vx.block], vx.block, {}});
      pb = vx.block;
      ps = -1;
    }
    if (vx.sub != ps) {
      out.back().subs.push_back({g.sub_degree[vx.sub], vx.sub, {}});
      ps = vx.sub;
    }
    out.back().subs.back().verts.push_back(v);
  }
  return out;
}

Graph rebuild(const Graph& g, const std::vector<BlockLayout>& spec) {
  std::vector<int> new_index(g.weight(), -1);
  Graph h;
  h.outputs = g.outputs;
  h.inputs = g.inputs;
  for (const auto& b : spec) {
    int bi = static_cast<int>(h.blocks.size());
    h.blocks.push_back(b.attr);
    for (const auto& s : b.subs) {
      int si = static_cast<int>(h.sub_degree.size());
      h.sub_degree.push_back(s.degree);
      for (int v : s.verts) {
        new_index[v] = static_cast<int>(h.vertices.size());
        Vertex nv = g.vertices[v];
        nv.block = bi;
        nv.sub = si;
        h.vertices.push_back(std::move(nv));
      }
    }
  }
  auto fix = [&](PortRef& s) {
    if (s.vertex != kGlobal) s.vertex = new_index[s.vertex];
  };
  for (auto& v : h.vertices)
    for (auto& s : v.in) fix(s);
  h.out = g.out;
  for (auto& s : h.out) fix(s);
  return h;
}

bool odd(int d) { return d % 2 != 0; }

// Symbol ids: block position p -> p, sub (p, i) -> kSub * (p + 1) + i.
constexpr int kSub = 1000;

std::vector<int> block_symbol(const std::vector<BlockLayout>& L, std::size_t p) {
  if (odd(L[p].attr.degree)) return {static_cast<int>(p)};
  return {};
}
std::vector<int> sub_symbols(const std::vector<BlockLayout>& L, std::size_t p, std::size_t from,
                             std::size_t to) {
  std::vector<int> out;
  for (std::size_t i = from; i < to; ++i)
    if (odd(L[p].subs[i].degree)) out.push_back(kSub * static_cast<int>(p + 1) + static_cast<int>(i));
  return out;
}
std::vector<int> block_items(const std::vector<BlockLayout>& L, std::size_t p) {
  auto out = block_symbol(L, p);
  auto s = sub_symbols(L, p, 0, L[p].subs.size());
  out.insert(out.end(), s.begin(), s.end());
  return out;
}
std::vector<int> items_range(const std::vector<BlockLayout>& L, std::size_t from, std::size_t to) {
  std::vector<int> out;
  for (std::size_t p = from; p < to; ++p) {
    auto b = block_items(L, p);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}
void append(std::vector<int>& a, const std::vector<int>& b) { a.insert(a.end(), b.begin(), b.end()); }

int reorder_sign(const std::vector<int>& from, const std::vector<int>& to) {
  if (from.size() != to.size()) throw std::logic_error("symbol rearrangement changes the symbol set");
  std::map<int, int> pos;
  for (std::size_t i = 0; i < to.size(); ++i) pos[to[i]] = static_cast<int>(i);
  int s = 1;
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = i + 1; j < from.size(); ++j)
      if (pos.at(from[i]) > pos.at(from[j])) s = -s;
  return s;
}

int parity_sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

std::vector<int> block_position(const Graph& g, const std::vector<BlockLayout>& L) {
  std::vector<int> pos(g.weight());
  for (std::size_t p = 0; p < L.size(); ++p)
    for (const auto& s : L[p].subs)
      for (int v : s.verts) pos[v] = static_cast<int>(p);
  return pos;
}

/// edge[p][q]: some vertex edge from block p to block q (p != q).
std::vector<std::vector<bool>> block_edges(const Graph& g, const std::vector<int>& pos, std::size_t nb) {
  std::vector<std::vector<bool>> e(nb, std::vector<bool>(nb, false));
  for (int v = 0; v < g.weight(); ++v)
    for (const auto& s : g.vertices[v].in)
      if (s.vertex != kGlobal && pos[s.vertex] != pos[v]) e[pos[s.vertex]][pos[v]] = true;
  return e;
}

std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> r) {
  std::size_t n = r.size();
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u)
      if (r[u][w])
        for (std::size_t v = 0; v < n; ++v)
          if (r[w][v]) r[u][v] = true;
  return r;
}

/// Merges the blocks at positions i < j (all subs fused into one of degree 0).
/// The odd symbols are brought together source first, so the sign depends on
/// the direction of the joining edges and not on the positions.
std::pair<int, Graph> merge_blocks(const Graph& g, const std::vector<BlockLayout>& L, std::size_t i,
                                   std::size_t j, bool j_is_source, Block merged) {
  const std::size_t s = j_is_source ? j : i, t = j_is_source ? i : j;
  const auto before = items_range(L, 0, i);
  std::vector<int> arr = before;
  append(arr, block_symbol(L, s));
  append(arr, block_symbol(L, t));
  append(arr, sub_symbols(L, s, 0, L[s].subs.size()));
  append(arr, sub_symbols(L, t, 0, L[t].subs.size()));
  append(arr, items_range(L, i + 1, j));
  append(arr, items_range(L, j + 1, L.size()));
  int sign = reorder_sign(items_range(L, 0, L.size()), arr) * parity_sign(before.size());

  std::vector<BlockLayout> spec;
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (p == j) continue;
    if (p != i) {
      spec.push_back(L[p]);
      continue;
    }
    SubLayout fused;
    for (std::size_t q : {i, j})
      for (const auto& s : L[q].subs) fused.verts.insert(fused.verts.end(), s.verts.begin(), s.verts.end());
    spec.push_back({merged, -1, {fused}});
  }
  return {sign, rebuild(g, spec)};
}

struct MergeablePair {
  std::size_t i, j;
  bool j_is_source;
};

/// Block pairs i < j that may be merged: adjacent, and no third block on a path.
std::vector<MergeablePair> mergeable_blocks(const Graph& g,
                                                                  const std::vector<BlockLayout>& L,
                                                                  int kind) {
  auto pos = block_position(g, L);
  auto e = block_edges(g, pos, L.size());
  auto r = closure(e);
  std::vector<MergeablePair> out;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i].attr.kind != kind) continue;
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      if (L[j].attr.kind != kind) continue;
      if (!e[i][j] && !e[j][i]) continue;
      bool longer = false;
      for (std::size_t z = 0; z < L.size() && !longer; ++z)
        if (z != i && z != j && ((r[i][z] && r[z][j]) || (r[j][z] && r[z][i]))) longer = true;
      if (!longer) out.push_back({i, j, e[j][i]});
    }
  }
  return out;
}

bool induced_connected(const Graph& g, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  std::vector<int> in(g.weight(), 0);
  for (int v : verts) in[v] = 1;
  std::vector<int> stack{verts.front()};
  in[verts.front()] = 2;
  std::size_t seen = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    auto visit = [&](int y) {
      if (in[y] == 1) {
        in[y] = 2;
        ++seen;
        stack.push_back(y);
      }
    };
    for (const auto& s : g.vertices[x].in)
      if (s.vertex != kGlobal) visit(s.vertex);
    for (int y = 0; y < g.weight(); ++y)
      for (const auto& s : g.vertices[y].in)
        if (s.vertex == x) visit(y);
  }
  return seen == verts.size();
}

}  // namespace

LinComb collect(const SignedGraphs& terms, GeneratorTable gens) {
  LinComb lc;
  for (const auto& [sign, g] : terms) add_term(lc, g, sign, gens);
  return lc;
}

SignedGraphs bar_merges(const Graph& g) {
  auto L = layout_of(g);
  SignedGraphs out;
  for (auto [i, j, js] : mergeable_blocks(g, L, kBarBlock)) out.push_back(merge_blocks(g, L, i, j, js, {kBarBlock, 1}));
  return out;
}

SignedGraphs cogenerator_moves(const Graph& g, bool minimal) {
  auto L = layout_of(g);
  auto pos = block_position(g, L);
  auto e = block_edges(g, pos, L.size());
  SignedGraphs out;
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (L[p].attr.kind != kCoVertex) continue;
    bool extreme = true;
    for (std::size_t q = 0; q < L.size() && extreme; ++q)
      if (L[q].attr.kind == kCoVertex && (minimal ? e[q][p] : e[p][q])) extreme = false;
    if (!extreme) continue;
    auto spec = L;
    spec[p].attr = {kPlain, 0};
    out.emplace_back(parity_sign(items_range(L, 0, p).size()), rebuild(g, spec));
  }
  return out;
}

SignedGraphs bar_block_moves(const Graph& g) {
  auto L = layout_of(g);
  auto pos = block_position(g, L);
  auto e = block_edges(g, pos, L.size());
  SignedGraphs out;
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (L[p].attr.kind != kBarBlock) continue;
    bool minimal = true;
    for (std::size_t q = 0; q < L.size() && minimal; ++q)
      if (L[q].attr.kind == kBarBlock && e[q][p]) minimal = false;
    if (!minimal) continue;
    std::vector<BlockLayout> spec(L.begin(), L.begin() + static_cast<long>(p));
    for (const auto& s : L[p].subs)
      for (int v : s.verts) spec.push_back({{kPlain, 0}, -1, {SubLayout{0, -1, {v}}}});
    spec.insert(spec.end(), L.begin() + static_cast<long>(p) + 1, L.end());
    // The desuspension anticommutes with the bar merges.
    out.emplace_back(-parity_sign(items_range(L, 0, p).size()), rebuild(g, spec));
  }
  return out;
}

SignedGraphs cobar_splits(const Graph& g) {
  auto L = layout_of(g);
  SignedGraphs out;
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (L[p].attr.kind != kCobarBlock) continue;
    const auto& subs = L[p].subs;
    const std::size_t s = subs.size();
    if (s < 2) continue;
    std::vector<int> sub_of(g.weight(), -1);
    for (std::size_t i = 0; i < s; ++i)
      for (int v : subs[i].verts) sub_of[v] = static_cast<int>(i);
    const auto prefix = items_range(L, 0, p);
    const auto all = items_range(L, 0, L.size());
    for (unsigned mask = 1; mask + 1 < (1u << s); ++mask) {
      auto lower = [&](int v) { return sub_of[v] >= 0 && ((mask >> sub_of[v]) & 1u); };
      auto upper = [&](int v) { return sub_of[v] >= 0 && !((mask >> sub_of[v]) & 1u); };
      // The lower part must be closed downwards inside the cluster.
      bool ok = true;
      std::vector<int> low_v, up_v;
      for (int v = 0; v < g.weight(); ++v) {
        if (lower(v)) {
          low_v.push_back(v);
          for (const auto& src : g.vertices[v].in)
            if (src.vertex != kGlobal && upper(src.vertex)) ok = false;
        } else if (upper(v)) {
          up_v.push_back(v);
        }
      }
      if (!ok || !induced_connected(g, low_v) || !induced_connected(g, up_v)) continue;

      BlockLayout c1{L[p].attr, -1, {}}, c2{L[p].attr, -1, {}};
      std::vector<int> low_items, up_items;
      for (std::size_t i = 0; i < s; ++i) {
        bool lo = (mask >> i) & 1u;
        (lo ? c1 : c2).subs.push_back(subs[i]);
        append(lo ? low_items : up_items, sub_symbols(L, p, i, i + 1));
      }
      std::vector<int> arr = prefix;
      append(arr, block_symbol(L, p));
      append(arr, low_items);
      append(arr, up_items);
      append(arr, items_range(L, p + 1, L.size()));
      int sign = reorder_sign(all, arr) * parity_sign(prefix.size()) * -1 * parity_sign(low_items.size());

      std::vector<BlockLayout> spec(L.begin(), L.begin() + static_cast<long>(p));
      spec.push_back(std::move(c1));
      spec.push_back(std::move(c2));
      spec.insert(spec.end(), L.begin() + static_cast<long>(p) + 1, L.end());
      out.emplace_back(sign, rebuild(g, spec));
    }
  }
  return out;
}

SignedGraphs coalgebra_constraint(const Graph& g) {
  auto L = layout_of(g);
  SignedGraphs out;
  for (auto [i, j, js] : mergeable_blocks(g, L, kCoVertex)) out.push_back(merge_blocks(g, L, i, j, js, {kCoPair, 1}));

  std::vector<std::pair<int, int>> sub_at(g.weight());  // vertex -> (block position, sub index)
  for (std::size_t p = 0; p < L.size(); ++p)
    for (std::size_t i = 0; i < L[p].subs.size(); ++i)
      for (int v : L[p].subs[i].verts) sub_at[v] = {static_cast<int>(p), static_cast<int>(i)};
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  for (auto [u, v] : contractible_pairs(g)) {
    auto [pu, iu] = sub_at[u];
    auto [pv, iv] = sub_at[v];
    if (pu != pv || iu == iv || L[pu].attr.kind != kCobarBlock) continue;
    const auto& subs = L[pu].subs;
    if (subs[iu].verts.size() != 1 || subs[iv].verts.size() != 1) continue;
    std::size_t a = std::min(iu, iv), b = std::max(iu, iv);
    const std::size_t src = static_cast<std::size_t>(iu), dst = static_cast<std::size_t>(iv);
    if (!done.insert({{pu, static_cast<int>(a)}, {pu, static_cast<int>(b)}}).second) continue;
    std::size_t p = static_cast<std::size_t>(pu);

    std::vector<int> prefix = items_range(L, 0, p);
    append(prefix, block_symbol(L, p));
    append(prefix, sub_symbols(L, p, 0, a));
    std::vector<int> arr = prefix;
    append(arr, sub_symbols(L, p, src, src + 1));
    append(arr, sub_symbols(L, p, dst, dst + 1));
    append(arr, sub_symbols(L, p, a + 1, b));
    append(arr, sub_symbols(L, p, b + 1, subs.size()));
    append(arr, items_range(L, p + 1, L.size()));
    int sign = reorder_sign(items_range(L, 0, L.size()), arr) * parity_sign(prefix.size());

    auto spec = L;
    SubLayout pair{1, -1, {subs[a].verts.front(), subs[b].verts.front()}};
    auto& ns = spec[p].subs;
    ns.erase(ns.begin() + static_cast<long>(b));
    ns[a] = pair;
    out.emplace_back(sign, rebuild(g, spec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cell enumeration

std::vector<std::vector<int>> cluster_partitions(const Graph& g, int blocks, const std::vector<bool>& within) {
  std::vector<int> verts;
  for (int v = 0; v < g.weight(); ++v)
    if (within.empty() || within[v]) verts.push_back(v);
  const int k = static_cast<int>(verts.size());
  std::vector<std::vector<int>> out;
  if (blocks < 1 || blocks > k) return out;
  std::vector<int> a(g.weight(), -1);
  // Restricted growth strings over `verts`: each label is at most one more
  // than the largest label so far.
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == k) {
      if (mx + 1 != blocks) return;
      std::vector<std::vector<int>> members(blocks);
      for (int v : verts) members[a[v]].push_back(v);
      for (const auto& m : members)
        if (!induced_connected(g, m)) return;
      std::vector<std::vector<bool>> e(blocks, std::vector<bool>(blocks, false));
      for (int v : verts)
        for (const auto& s : g.vertices[v].in)
          if (s.vertex != kGlobal && a[s.vertex] >= 0 && a[s.vertex] != a[v]) e[a[s.vertex]][a[v]] = true;
      auto r = closure(e);
      for (int b = 0; b < blocks; ++b)
        if (r[b][b]) return;
      out.push_back(a);
      return;
    }
    for (int c = 0; c <= std::min(mx + 1, blocks - 1); ++c) {
      a[verts[i]] = c;
      rec(i + 1, std::max(mx, c));
    }
  };
  a[verts[0]] = 0;
  rec(1, 0);
  return out;
}

std::vector<std::vector<bool>> closed_subsets(const Graph& g, int size, bool upward) {
  const int k = g.weight();
  std::vector<std::vector<bool>> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != size) continue;
    bool ok = true;
    for (int v = 0; v < k && ok; ++v)
      for (const auto& s : g.vertices[v].in) {
        if (s.vertex == kGlobal) continue;
        bool src_in = (mask >> s.vertex) & 1u, dst_in = (mask >> v) & 1u;
        // upward: nothing leaves the set; downward: nothing enters it.
        if (upward ? (src_in && !dst_in) : (!src_in && dst_in)) ok = false;
      }
    if (!ok) continue;
    std::vector<bool> in(k);
    for (int v = 0; v < k; ++v) in[v] = (mask >> v) & 1u;
    out.push_back(std::move(in));
  }
  return out;
}

Graph structured_cell(const Graph& plain, const std::vector<int>& block_of,
                      const std::vector<Block>& blocks, bool singleton_subs, int sub_degree) {
  std::vector<BlockLayout> spec(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    spec[b].attr = blocks[b];
    if (!singleton_subs) spec[b].subs.push_back({0, -1, {}});
  }
  for (int v = 0; v < plain.weight(); ++v) {
    auto& sb = spec.at(block_of[v]);
    if (singleton_subs)
      sb.subs.push_back({sub_degree, -1, {v}});
    else
      sb.subs.front().verts.push_back(v);
  }
  for (const auto& b : spec)
    if (b.subs.empty() || (b.subs.size() == 1 && b.subs.front().verts.empty()))
      throw std::invalid_argument("empty block in structured cell");
  return rebuild(plain, spec);
}

}  // namespace propkoszul
