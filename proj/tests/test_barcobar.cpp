#include <numeric>
#include <random>

#include "doctest.h"
#include "propkoszul/barcobar.hpp"
#include "propkoszul/enumerate.hpp"
#include "propkoszul/koszul.hpp"
#include "propkoszul/presets.hpp"

using namespace propkoszul;

namespace {

Graph renumber(const Graph& g, const std::vector<int>& order) {
  std::vector<int> where(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = static_cast<int>(i);
  Graph h = g;
  for (std::size_t i = 0; i < order.size(); ++i) h.vertices[i] = g.vertices[order[i]];
  for (auto& v : h.vertices)
    for (auto& s : v.in)
      if (s.vertex != kGlobal) s.vertex = where[s.vertex];
  for (auto& s : h.out)
    if (s.vertex != kGlobal) s.vertex = where[s.vertex];
  return h;
}

LinComb scaled(const LinComb& x, int s) {
  LinComb out;
  for (const auto& [c, q] : x) out[c] = q * s;
  return out;
}

/// The differential must be well defined on classes: renumbering the
/// vertices of a cell multiplies both the cell and its boundary by the same
/// Koszul sign.
void check_well_defined(const std::vector<Code>& cells, GeneratorTable gens,
                        const std::function<LinComb(const Graph&)>& d, std::mt19937& rng) {
  for (const auto& code : cells) {
    Graph g = decode(code);
    LinComb dg = d(g);
    for (int t = 0; t < 3; ++t) {
      std::vector<int> order(g.weight());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      Graph h = renumber(g, order);
      int s = canonical_form(h, gens).sign;
      REQUIRE(s != 0);
      CHECK(d(h) == scaled(dg, s));
    }
  }
}

}  // namespace

TEST_SUITE("barcobar") {
  TEST_CASE("bar differential is well defined on classes") {
    std::mt19937 rng(23);
    for (const char* name : {"bilie", "lie-operad", "infbi"}) {
      QuadraticProp p(load_preset(name));
      GeneratorTable gens = p.generators();
      for (auto [m, n] : {std::pair{1, 4}, std::pair{2, 3}, std::pair{3, 2}})
        for (int k = 1; k <= 3; ++k) {
          auto cells = bar_cells(p, m, n, 3, k).codes();
          check_well_defined(cells, gens, [gens](const Graph& g) { return bar_differential(g, gens); }, rng);
        }
    }
  }

  TEST_CASE("cobar differential is well defined on classes") {
    std::mt19937 rng(29);
    for (const char* name : {"bilie", "ass-operad"}) {
      QuadraticProp p(load_preset(name));
      GeneratorTable gens = p.generators();
      auto c = cobar_complex(p, 1, 4, 3);
      for (const auto& level : c.levels)
        check_well_defined(level.space.ambient().codes(), gens,
                           [gens](const Graph& g) { return cobar_differential(g, gens); }, rng);
    }
  }

  TEST_CASE("bar complexes square to zero") {
    TruncationParams trunc{3, 5};
    for (const auto& name : preset_names()) {
      QuadraticProp p(load_preset(name));
      for (auto [m, n] : truncation_components(trunc))
        for (int w = 1; w <= 3; ++w) {
          INFO(name << " (" << m << "," << n << ") weight " << w);
          auto b = bar_complex(p, m, n, w);
          CHECK(b.complex.shapes_consistent());
          CHECK_FALSE(b.complex.first_d2_failure().has_value());
          CHECK(b.complex.dims.front() == 0);
        }
    }
  }

  TEST_CASE("cobar complexes square to zero") {
    TruncationParams trunc{3, 5};
    for (const auto& name : preset_names()) {
      QuadraticProp p(load_preset(name));
      for (auto [m, n] : truncation_components(trunc))
        for (int w = 1; w <= 3; ++w) {
          INFO(name << " (" << m << "," << n << ") weight " << w);
          auto c = cobar_complex(p, m, n, w);
          CHECK(c.complex.shapes_consistent());
          CHECK_FALSE(c.complex.first_d2_failure().has_value());
        }
    }
  }

  TEST_CASE("bar degree one is P itself, top degree contains the dual") {
    QuadraticProp p(load_preset("bilie"));
    for (auto [m, n] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}})
      for (int w = 1; w <= 3; ++w) {
        auto b = bar_complex(p, m, n, w);
        REQUIRE(b.complex.dims.size() == static_cast<std::size_t>(w + 1));
        CHECK(b.complex.dims[1] == p.quotient(m, n, w).dim());
        CHECK(b.complex.dims[w] == enumerate_connected(p.generators(), w, m, n).size());
        auto h = homology_dims(b.complex);
        CHECK(h[w] == koszul_dual_component(p, m, n, w).dim());
      }
  }

  TEST_CASE("bar boundary matches the assembled complex") {
    QuadraticProp p(load_preset("ass-operad"));
    auto b = bar_complex(p, 1, 4, 3);
    for (int k = 1; k <= 3; ++k) CHECK(bar_boundary(p, 1, 4, 3, k) == b.complex.boundaries[k]);
  }

  TEST_CASE("partial product is the class of the two-vertex graph") {
    // A two-vertex graph with every other port global is its own composite:
    // relabeling the merged legs back to the original ones recovers the class
    // of the whole graph in P.
    auto check_pair = [](const QuadraticProp& p, const std::string& literal) {
      GeneratorTable gens = p.generators();
      Graph g = parse_graph_literal(literal, gens);
      Contraction c = contract_edge_pair(g, 0, 1);
      std::vector<int> sigma(c.out_ports.size()), tau(c.in_ports.size());
      for (std::size_t k = 0; k < c.in_ports.size(); ++k) {
        auto [x, j] = c.in_ports[k];
        tau[k] = g.vertices[x].in[j].port;
      }
      for (std::size_t k = 0; k < c.out_ports.size(); ++k)
        for (int o = 0; o < g.outputs; ++o)
          if (g.out[o] == PortRef{c.out_ports[k].first, c.out_ports[k].second}) sigma[k] = o;
      LinComb merged;
      for (const auto& [code, q] : partial_product(p, g, 0, 1))
        add_term(merged, relabel_legs(decode(code), Permutation(sigma), Permutation(tau)), q, gens);
      LinComb whole;
      add_term(whole, g, 1, gens);
      // Relabeling leaves the normal form, so both sides are reduced again.
      merged = reduce_in_quotient(p, merged);
      CHECK(merged == reduce_in_quotient(p, whole));
      return merged;
    };
    QuadraticProp ass(load_preset("ass-operad"));
    LinComb left = check_pair(ass,
                              "a=product; b=product; in[1] -> a.in[1]; in[2] -> a.in[2]; a.out[1] -> b.in[1]; "
                              "in[3] -> b.in[2]; b.out[1] -> out[1]");
    LinComb right = check_pair(ass,
                               "a=product; b=product; in[2] -> a.in[1]; in[3] -> a.in[2]; in[1] -> b.in[1]; "
                               "a.out[1] -> b.in[2]; b.out[1] -> out[1]");
    CHECK_FALSE(left.empty());
    CHECK(left == right);  // associativity
    QuadraticProp bilie(load_preset("bilie"));
    check_pair(bilie,
               "a=bracket; b=cobracket; in[1] -> a.in[1]; in[2] -> a.in[2]; a.out[1] -> b.in[1]; b.out[1] -> out[1]; "
               "b.out[2] -> out[2]");
    QuadraticProp nil(load_preset("nilpotent-algebra"));
    CHECK(check_pair(nil, "a=x; b=x; in[1] -> a.in[1]; a.out[1] -> b.in[1]; b.out[1] -> out[1]").empty());
  }

  TEST_CASE("cobar of the dual resolves small presets") {
    QuadraticProp nil(load_preset("nilpotent-algebra"));
    for (int w = 1; w <= 6; ++w) {
      auto h = homology_dims(cobar_complex(nil, 1, 1, w).complex);
      CHECK(h.front() == nil.quotient(1, 1, w).dim());
      CHECK(std::accumulate(h.begin() + 1, h.end(), std::size_t{0}) == 0);
    }
    QuadraticProp lie(load_preset("lie-operad"));
    for (int n = 2; n <= 4; ++n) {
      auto h = homology_dims(cobar_complex(lie, 1, n, n - 1).complex);
      CHECK(h.front() == lie.quotient(1, n, n - 1).dim());
      CHECK(std::accumulate(h.begin() + 1, h.end(), std::size_t{0}) == 0);
    }
  }
}
