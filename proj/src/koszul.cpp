#include "propkoszul/koszul.hpp"

#include <stdexcept>

#include "propkoszul/enumerate.hpp"
#include "propkoszul/parallel.hpp"

namespace propkoszul {

KoszulDualComponent koszul_dual_component(const QuadraticProp& p, int m, int n, int weight) {
  const CellContext ctx = p.context();
  GeneratorTable gens = p.generators();
  KoszulDualComponent k;
  k.m = m;
  k.n = n;
  k.weight = weight;
  if (weight == 0) {
    // The counit: the bare strand in (1, 1), nothing elsewhere.
    k.cells = QuotientSpace(CellSpace(enumerate_connected(gens, 0, m, n)), ctx);
    k.basis = RationalMatrix::identity(k.cells.dim());
    return k;
  }
  k.cells = QuotientSpace(bar_cells(p, m, n, weight, weight), ctx);
  k.basis = constrained_subspace(k.cells, [gens](const Graph& g) { return bar_differential(g, gens); }, ctx);
  return k;
}

std::size_t KoszulDual::dim(int m, int n, int weight) const {
  auto it = dims.find({m, n, weight});
  return it == dims.end() ? 0 : it->second;
}

std::vector<std::pair<int, int>> truncation_components(const TruncationParams& trunc,
                                                       std::optional<std::pair<int, int>> only) {
  std::vector<std::pair<int, int>> out;
  if (only) {
    if (trunc.admits(only->first, only->second)) out.push_back(*only);
    return out;
  }
  for (int s = 2; s <= trunc.max_biarity; ++s)
    for (int m = 1; m < s; ++m) out.emplace_back(m, s - m);
  return out;
}

namespace {

struct SliceKey {
  int m, n, w;
};

std::vector<SliceKey> slices(const TruncationParams& trunc, std::optional<std::pair<int, int>> only) {
  std::vector<SliceKey> out;
  for (auto [m, n] : truncation_components(trunc, only))
    for (int w = 1; w <= trunc.max_weight; ++w) out.push_back({m, n, w});
  return out;
}

SliceHomology homology_of(const SliceKey& k, const ChainComplex& c) {
  SliceHomology h;
  h.m = k.m;
  h.n = k.n;
  h.weight = k.w;
  h.dims = c.dims;
  h.homology = homology_dims(c);
  return h;
}

/// First degree whose homology differs from `expected` (0 where not given).
std::optional<std::pair<int, std::size_t>> first_deviation(const SliceHomology& h,
                                                           const std::vector<std::size_t>& expected) {
  for (std::size_t d = 0; d < h.homology.size(); ++d) {
    std::size_t want = d < expected.size() ? expected[d] : 0;
    if (h.homology[d] != want) return std::make_pair(static_cast<int>(d), h.homology[d]);
  }
  return std::nullopt;
}

Witness witness_of(const std::string& complex, const SliceHomology& h, std::pair<int, std::size_t> dev) {
  return {complex, h.m, h.n, h.weight, dev.first, dev.second};
}

std::vector<Code> plain_cells(const QuadraticProp& p, int m, int n, int weight) {
  return enumerate_connected(p.generators(), weight, m, n);
}

}  // namespace

KoszulDual koszul_dual(const QuadraticProp& p, const TruncationParams& trunc) {
  KoszulDual d;
  for (auto [m, n] : truncation_components(trunc))
    for (int w = 1; w <= trunc.max_weight; ++w) d.dims[{m, n, w}] = koszul_dual_component(p, m, n, w).dim();
  return d;
}

ChainComplex koszul_complex(const QuadraticProp& p, int m, int n, int weight, KoszulSide side) {
  const bool upward = side == KoszulSide::kDualOnTop;
  const CellContext ctx = p.context();
  GeneratorTable gens = p.generators();
  auto plain = plain_cells(p, m, n, weight);
  auto constraint = [gens](const Graph& g) { return collect(coalgebra_constraint(g), gens); };
  std::vector<ComplexLevel> levels;
  for (int i = 0; i <= weight; ++i) {
    std::vector<Code> codes;
    for (const auto& code : plain) {
      Graph g = decode(code);
      std::vector<int> block_of(g.weight());
      for (int v = 0; v < g.weight(); ++v) block_of[v] = v;
      for (const auto& t : closed_subsets(g, i, upward)) {
        std::vector<Block> blocks(g.weight());
        for (int v = 0; v < g.weight(); ++v) blocks[v] = t[v] ? Block{kCoVertex, 1} : Block{kPlain, 0};
        auto c = canonical_form(structured_cell(g, block_of, blocks, false, 0), gens);
        if (c.sign != 0) codes.push_back(std::move(c.code));
      }
    }
    ComplexLevel level{QuotientSpace(CellSpace(std::move(codes)), ctx), std::nullopt};
    if (i >= 2) level.subspace = constrained_subspace(level.space, constraint, ctx);
    levels.push_back(std::move(level));
  }
  return assemble_complex(levels, [gens, upward](const Graph& g) {
    return collect(cogenerator_moves(g, upward), gens);
  });
}

ChainComplex augmented_bar_complex(const QuadraticProp& p, int m, int n, int weight) {
  const CellContext ctx = p.context();
  GeneratorTable gens = p.generators();
  auto plain = plain_cells(p, m, n, weight);
  std::vector<ComplexLevel> levels;
  for (int k = 0; k <= weight; ++k) {
    std::vector<Code> codes;
    for (const auto& code : plain) {
      Graph g = decode(code);
      for (int t = k; t <= weight; ++t) {
        if (k == 0 && t > 0) break;
        for (const auto& in_bar : closed_subsets(g, t, true)) {
          std::vector<std::vector<int>> parts;
          if (k == 0)
            parts.emplace_back(g.weight(), -1);
          else
            parts = cluster_partitions(g, k, in_bar);
          for (auto block_of : parts) {
            std::vector<Block> blocks(k, Block{kBarBlock, 1});
            for (int v = 0; v < g.weight(); ++v)
              if (block_of[v] < 0) {
                block_of[v] = static_cast<int>(blocks.size());
                blocks.push_back({kPlain, 0});
              }
            auto c = canonical_form(structured_cell(g, block_of, blocks, false, 0), gens);
            if (c.sign != 0) codes.push_back(std::move(c.code));
          }
        }
      }
    }
    levels.push_back({QuotientSpace(CellSpace(std::move(codes)), ctx), std::nullopt});
  }
  return assemble_complex(levels, [gens](const Graph& g) {
    SignedGraphs terms = bar_merges(g);
    SignedGraphs moves = bar_block_moves(g);
    terms.insert(terms.end(), moves.begin(), moves.end());
    return collect(terms, gens);
  });
}

KoszulReport koszul_check(const QuadraticProp& p, const TruncationParams& trunc,
                          std::optional<std::pair<int, int>> only, int jobs) {
  struct Result {
    SliceHomology top, bottom, bar;
  };
  auto keys = slices(trunc, only);
  auto results = parallel_map<Result>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    Result r;
    r.top = homology_of(k, koszul_complex(p, k.m, k.n, k.w, KoszulSide::kDualOnTop));
    r.bottom = homology_of(k, koszul_complex(p, k.m, k.n, k.w, KoszulSide::kDualOnBottom));
    r.bar = homology_of(k, bar_complex(p, k.m, k.n, k.w).complex);
    return r;
  });

  KoszulReport rep;
  rep.presentation = p.presentation().name;
  rep.trunc = trunc;
  std::optional<Witness> w_top, w_bottom, w_bar;
  for (auto& r : results) {
    if (auto dev = first_deviation(r.top, {})) {
      r.top.ok = false;
      rep.koszul_acyclic = false;
      if (!w_top) w_top = witness_of("koszul", r.top, *dev);
    }
    if (auto dev = first_deviation(r.bottom, {})) {
      r.bottom.ok = false;
      rep.mirrored_acyclic = false;
      if (!w_bottom) w_bottom = witness_of("koszul-mirrored", r.bottom, *dev);
    }
    // Top-degree bar homology is P^¡ itself; everything below must vanish.
    std::vector<std::size_t> expected(r.bar.homology.size(), 0);
    if (!expected.empty()) expected.back() = r.bar.homology.back();
    if (auto dev = first_deviation(r.bar, expected)) {
      r.bar.ok = false;
      rep.bar_concentrated = false;
      if (!w_bar) w_bar = witness_of("bar", r.bar, *dev);
    }
    rep.koszul.push_back(std::move(r.top));
    rep.mirrored.push_back(std::move(r.bottom));
    rep.bar.push_back(std::move(r.bar));
  }
  rep.witness = w_top ? w_top : w_bottom ? w_bottom : w_bar;
  return rep;
}

AcyclicityReport augmented_bar_acyclicity(const QuadraticProp& p, const TruncationParams& trunc,
                                          std::optional<std::pair<int, int>> only, int jobs) {
  auto keys = slices(trunc, only);
  auto results = parallel_map<SliceHomology>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    return homology_of(k, augmented_bar_complex(p, k.m, k.n, k.w));
  });
  AcyclicityReport rep;
  rep.presentation = p.presentation().name;
  rep.trunc = trunc;
  for (auto& h : results) {
    if (auto dev = first_deviation(h, {})) {
      h.ok = false;
      rep.acyclic = false;
      if (!rep.witness) rep.witness = witness_of("augmented-bar", h, *dev);
    }
    rep.slices.push_back(std::move(h));
  }
  return rep;
}

BarCobarReport bar_cobar_check(const QuadraticProp& p, const TruncationParams& trunc,
                               std::optional<std::pair<int, int>> only, int jobs) {
  auto keys = slices(trunc, only);
  auto results = parallel_map<std::pair<SliceHomology, std::size_t>>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    return std::make_pair(homology_of(k, cobar_complex(p, k.m, k.n, k.w).complex),
                          p.quotient(k.m, k.n, k.w).dim());
  });
  BarCobarReport rep;
  rep.presentation = p.presentation().name;
  rep.trunc = trunc;
  for (auto& [h, dim_p] : results) {
    if (auto dev = first_deviation(h, {dim_p})) {
      h.ok = false;
      rep.resolution = false;
      if (!rep.witness) rep.witness = witness_of("cobar", h, *dev);
    }
    rep.slices.push_back(std::move(h));
    rep.quotient_dims.push_back(dim_p);
  }
  return rep;
}

bool D2Report::all_zero() const {
  for (const auto& e : entries)
    if (!e.ok()) return false;
  return true;
}

D2Report d2_check(const QuadraticProp& p, const TruncationParams& trunc, std::optional<std::pair<int, int>> only,
                  int jobs) {
  static const std::vector<std::string> kinds{"bar", "cobar", "koszul", "koszul-mirrored", "augmented-bar"};
  auto keys = slices(trunc, only);
  auto results = parallel_map<D2Entry>(keys.size() * kinds.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i / kinds.size()];
    const auto& kind = kinds[i % kinds.size()];
    D2Entry e;
    e.complex = kind;
    e.m = k.m;
    e.n = k.n;
    e.weight = k.w;
    try {
      ChainComplex c;
      if (kind == "bar")
        c = bar_complex(p, k.m, k.n, k.w).complex;
      else if (kind == "cobar")
        c = cobar_complex(p, k.m, k.n, k.w).complex;
      else if (kind == "koszul")
        c = koszul_complex(p, k.m, k.n, k.w, KoszulSide::kDualOnTop);
      else if (kind == "koszul-mirrored")
        c = koszul_complex(p, k.m, k.n, k.w, KoszulSide::kDualOnBottom);
      else
        c = augmented_bar_complex(p, k.m, k.n, k.w);
      e.failure = c.first_d2_failure();
    } catch (const std::logic_error& ex) {
      e.error = ex.what();
    }
    return e;
  });
  D2Report rep;
  rep.presentation = p.presentation().name;
  rep.trunc = trunc;
  rep.entries = std::move(results);
  return rep;
}

}  // namespace propkoszul
