#include "propkoszul/barcobar.hpp"

#include <algorithm>
#include <stdexcept>

#include "propkoszul/enumerate.hpp"

namespace propkoszul {

namespace {

// The structural operations read blocks off the vertex order, so a cell given
// in an arbitrary numbering goes through its canonical representative.
LinComb on_canonical(const Graph& cell, GeneratorTable gens, const CellMap& d) {
  auto cf = canonical_form(cell, gens);
  if (cf.sign == 0) return {};
  LinComb out = d(decode(cf.code));
  if (cf.sign < 0)
    for (auto& [code, q] : out) q = -q;
  return out;
}

}  // namespace

LinComb partial_product(const QuadraticProp& p, const Graph& g, int u, int v) {
  Contraction c = contract_edge_pair(g, u, v);
  Graph pair;
  pair.outputs = static_cast<int>(c.out_ports.size());
  pair.inputs = static_cast<int>(c.in_ports.size());
  auto local = [&](int x) { return x == u ? 0 : 1; };
  for (int x : {u, v}) {
    Vertex nv = g.vertices[x];
    nv.block = local(x);
    nv.sub = local(x);
    for (std::size_t j = 0; j < nv.in.size(); ++j) {
      const auto& s = g.vertices[x].in[j];
      if (s.vertex == u || s.vertex == v) {
        nv.in[j] = {local(s.vertex), s.port};
      } else {
        auto it = std::find(c.in_ports.begin(), c.in_ports.end(), std::make_pair(x, static_cast<int>(j)));
        nv.in[j] = {kGlobal, static_cast<int>(it - c.in_ports.begin())};
      }
    }
    pair.vertices.push_back(std::move(nv));
  }
  pair.out.resize(pair.outputs);
  for (std::size_t k = 0; k < c.out_ports.size(); ++k) {
    auto [x, q] = c.out_ports[k];
    pair.out[k] = {local(x), q};
  }
  pair.blocks.assign(2, Block{kPlain, 0});
  pair.sub_degree.assign(2, 0);
  LinComb lc;
  add_term(lc, pair, 1, p.generators());
  return reduce_in_quotient(p, lc);
}

CellSpace bar_cells(const QuadraticProp& p, int m, int n, int weight, int clusters) {
  std::vector<Code> codes;
  std::vector<Block> blocks(clusters, Block{kBarBlock, 1});
  for (const auto& code : enumerate_connected(p.generators(), weight, m, n)) {
    Graph g = decode(code);
    for (const auto& part : cluster_partitions(g, clusters)) {
      auto c = canonical_form(structured_cell(g, part, blocks, false, 0), p.generators());
      if (c.sign != 0) codes.push_back(std::move(c.code));
    }
  }
  return CellSpace(std::move(codes));
}

LinComb bar_differential(const Graph& cell, GeneratorTable gens) {
  return on_canonical(cell, gens, [gens](const Graph& g) { return collect(bar_merges(g), gens); });
}

BarComplex bar_complex(const QuadraticProp& p, int m, int n, int weight) {
  BarComplex b;
  b.m = m;
  b.n = n;
  b.weight = weight;
  const CellContext ctx = p.context();
  b.levels.push_back({QuotientSpace(CellSpace{}, ctx), std::nullopt});
  for (int k = 1; k <= weight; ++k) b.levels.push_back({QuotientSpace(bar_cells(p, m, n, weight, k), ctx), std::nullopt});
  GeneratorTable gens = p.generators();
  b.complex = assemble_complex(b.levels, [gens](const Graph& g) { return bar_differential(g, gens); });
  return b;
}

RationalMatrix bar_boundary(const QuadraticProp& p, int m, int n, int weight, int k) {
  if (k < 1 || k > weight) throw std::out_of_range("bar degree outside 1..weight");
  const CellContext ctx = p.context();
  if (k == 1) return RationalMatrix(0, QuotientSpace(bar_cells(p, m, n, weight, 1), ctx).dim());
  std::vector<ComplexLevel> levels{{QuotientSpace(bar_cells(p, m, n, weight, k - 1), ctx), std::nullopt},
                                   {QuotientSpace(bar_cells(p, m, n, weight, k), ctx), std::nullopt}};
  GeneratorTable gens = p.generators();
  return assemble_complex(levels, [gens](const Graph& g) { return bar_differential(g, gens); }).boundaries[1];
}

LinComb cobar_differential(const Graph& cell, GeneratorTable gens) {
  return on_canonical(cell, gens, [gens](const Graph& g) { return collect(cobar_splits(g), gens); });
}

CobarComplex cobar_complex(const QuadraticProp& p, int m, int n, int weight) {
  CobarComplex c;
  c.m = m;
  c.n = n;
  c.weight = weight;
  const CellContext ctx = p.context();
  GeneratorTable gens = p.generators();
  auto constraint = [gens](const Graph& g) { return collect(coalgebra_constraint(g), gens); };
  auto plain = enumerate_connected(gens, weight, m, n);
  for (int d = 0; d < weight; ++d) {
    const int clusters = weight - d;
    std::vector<Code> codes;
    std::vector<Block> blocks(clusters, Block{kCobarBlock, -1});
    for (const auto& code : plain) {
      Graph g = decode(code);
      for (const auto& part : cluster_partitions(g, clusters)) {
        auto cf = canonical_form(structured_cell(g, part, blocks, true, 1), gens);
        if (cf.sign != 0) codes.push_back(std::move(cf.code));
      }
    }
    ComplexLevel level{QuotientSpace(CellSpace(std::move(codes)), ctx), std::nullopt};
    if (clusters < weight) level.subspace = constrained_subspace(level.space, constraint, ctx);
    c.levels.push_back(std::move(level));
  }
  c.complex = assemble_complex(c.levels, [gens](const Graph& g) { return cobar_differential(g, gens); });
  return c;
}

}  // namespace propkoszul
