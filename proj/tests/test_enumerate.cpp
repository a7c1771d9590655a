#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "doctest.h"
#include "propkoszul/enumerate.hpp"
#include "propkoszul/presets.hpp"

using namespace propkoszul;

namespace {

// Brute-force classes of connected graphs: enumerate all labelled wirings
// (a bijection from sinks to sources), then take orbits under renumbering of
// equally decorated vertices and permutations of symmetric port sides.
struct Wiring {
  std::vector<int> gen;     // decoration per vertex
  std::vector<int> source;  // per sink
};

struct Shape {
  int m, n;
  std::vector<int> gen;
  std::vector<int> sink_base, source_base;  // first sink / source of each vertex
  int sinks = 0, sources = 0;
};

Shape shape_of(const std::vector<Generator>& gens, const std::vector<int>& gen, int m, int n) {
  Shape s{m, n, gen, {}, {}, m, n};
  for (int g : gen) {
    s.sink_base.push_back(s.sinks);
    s.source_base.push_back(s.sources);
    s.sinks += gens[g].inputs;
    s.sources += gens[g].outputs;
  }
  return s;
}

int vertex_of_source(const Shape& s, int src) {
  if (src < s.n) return -1;
  for (int v = static_cast<int>(s.gen.size()) - 1; v >= 0; --v)
    if (src >= s.source_base[v]) return v;
  return -1;
}
int vertex_of_sink(const Shape& s, int snk) {
  if (snk < s.m) return -1;
  for (int v = static_cast<int>(s.gen.size()) - 1; v >= 0; --v)
    if (snk >= s.sink_base[v]) return v;
  return -1;
}

bool valid(const Shape& s, const std::vector<int>& source) {
  const int k = static_cast<int>(s.gen.size());
  std::vector<std::vector<int>> adj(k);
  std::vector<std::set<int>> undirected(k);
  for (int snk = 0; snk < s.sinks; ++snk) {
    int to = vertex_of_sink(s, snk), from = vertex_of_source(s, source[snk]);
    if (to >= 0 && from >= 0) {
      if (to == from) return false;
      adj[from].push_back(to);
      undirected[from].insert(to);
      undirected[to].insert(from);
    }
  }
  // Acyclic: repeatedly strip vertices without incoming edges.
  std::vector<int> indeg(k, 0);
  for (int v = 0; v < k; ++v)
    for (int w : adj[v]) ++indeg[w];
  std::vector<int> stack;
  for (int v = 0; v < k; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : adj[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  if (seen != k) return false;
  // Connected (vertices only; every leg touches a vertex when k >= 1).
  std::vector<bool> vis(k, false);
  stack = {0};
  vis[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : undirected[v])
      if (!vis[w]) {
        vis[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  for (int snk = 0; snk < s.m; ++snk)
    if (source[snk] < s.n) return false;  // bare strand
  return count == k;
}

std::vector<std::vector<int>> perms_of(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

/// Number of nonvanishing classes.
std::size_t brute_force_count(const std::vector<Generator>& gens, int weight, int m, int n) {
  std::size_t total = 0;
  std::vector<int> gen(weight, 0);
  std::function<void(int, int)> choose = [&](int i, int from) {
    if (i == weight) {
      Shape s = shape_of(gens, gen, m, n);
      if (s.sinks != s.sources) return;
      // Symmetry group elements: vertex renumbering + port permutations.
      struct Element {
        std::vector<int> sink_map, source_map;
        int sign;
      };
      std::vector<Element> group;
      for (const auto& pi : perms_of(weight)) {
        bool ok = true;
        for (int v = 0; v < weight; ++v) ok = ok && gen[v] == gen[pi[v]];
        if (!ok) continue;
        // Iterate over port permutations vertex by vertex.
        std::vector<std::vector<std::vector<int>>> in_choices(weight), out_choices(weight);
        for (int v = 0; v < weight; ++v) {
          const auto& g = gens[gen[v]];
          in_choices[v] = g.right == Symmetry::Regular ? std::vector<std::vector<int>>{perms_of(g.inputs)[0]} : perms_of(g.inputs);
          out_choices[v] = g.left == Symmetry::Regular ? std::vector<std::vector<int>>{perms_of(g.outputs)[0]} : perms_of(g.outputs);
        }
        std::vector<std::size_t> ci(weight, 0), co(weight, 0);
        while (true) {
          Element e{std::vector<int>(s.sinks), std::vector<int>(s.sources), 1};
          for (int k = 0; k < m; ++k) e.sink_map[k] = k;
          for (int k = 0; k < n; ++k) e.source_map[k] = k;
          for (int v = 0; v < weight; ++v) {
            const auto& g = gens[gen[v]];
            const auto& a = in_choices[v][ci[v]];
            const auto& b = out_choices[v][co[v]];
            for (int p = 0; p < g.inputs; ++p) e.sink_map[s.sink_base[v] + p] = s.sink_base[pi[v]] + a[p];
            for (int p = 0; p < g.outputs; ++p) e.source_map[s.source_base[v] + p] = s.source_base[pi[v]] + b[p];
            if (g.right == Symmetry::Sign) e.sign *= perm_sign(a);
            if (g.left == Symmetry::Sign) e.sign *= perm_sign(b);
          }
          group.push_back(std::move(e));
          int v = 0;
          for (; v < weight; ++v) {
            if (++ci[v] < in_choices[v].size()) break;
            ci[v] = 0;
            if (++co[v] < out_choices[v].size()) break;
            co[v] = 0;
          }
          if (v == weight) break;
        }
      }
      std::set<std::vector<int>> reps;
      std::vector<int> src(s.sources);
      std::iota(src.begin(), src.end(), 0);
      do {
        if (!valid(s, src)) continue;
        std::vector<int> best;
        bool odd = false;
        for (const auto& e : group) {
          std::vector<int> img(s.sinks);
          for (int k = 0; k < s.sinks; ++k) img[e.sink_map[k]] = e.source_map[src[k]];
          if (best.empty() || img < best) best = img;
          if (img == src && e.sign < 0) odd = true;
        }
        if (!odd) reps.insert(best);
      } while (std::next_permutation(src.begin(), src.end()));
      total += reps.size();
      return;
    }
    for (int g = from; g < static_cast<int>(gens.size()); ++g) {
      gen[i] = g;
      choose(i + 1, g);
    }
  };
  choose(0, 0);
  return total;
}

std::size_t double_factorial(int k) { return k <= 1 ? 1 : k * double_factorial(k - 2); }
std::size_t catalan(int k) { return k == 0 ? 1 : catalan(k - 1) * 2 * (2 * k - 1) / (k + 1); }
std::size_t factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("binary trees with a symmetric product: (2n-3)!! classes") {
    std::vector<Generator> com{{"mu", 1, 2, Symmetry::Trivial, Symmetry::Trivial}};
    CHECK(enumerate_connected(com, 2, 1, 3).size() == 3);
    for (int n = 2; n <= 5; ++n) CHECK(enumerate_connected(com, n - 1, 1, n).size() == double_factorial(2 * n - 3));
  }

  TEST_CASE("binary trees with a regular product: Catalan times (n)!") {
    std::vector<Generator> ass{{"mu", 1, 2, Symmetry::Trivial, Symmetry::Regular}};
    for (int k = 1; k <= 3; ++k) CHECK(enumerate_connected(ass, k, 1, k + 1).size() == catalan(k) * factorial(k + 1));
  }

  TEST_CASE("antisymmetric trees do not vanish") {
    std::vector<Generator> lie{{"b", 1, 2, Symmetry::Trivial, Symmetry::Sign}};
    for (int n = 2; n <= 5; ++n) CHECK(enumerate_connected(lie, n - 1, 1, n).size() == double_factorial(2 * n - 3));
  }

  TEST_CASE("weight 0 and empty components") {
    std::vector<Generator> com{{"mu", 1, 2, Symmetry::Trivial, Symmetry::Trivial}};
    CHECK(enumerate_connected(com, 1, 2, 1).empty());
    CHECK(enumerate_free(com, 0, 3, 3, false).size() == 6);
    CHECK(enumerate_free(com, 0, 1, 1, true).size() == 1);
  }

  TEST_CASE("connected graph counts agree with brute-force orbit counting") {
    for (const char* name : {"bilie", "infbi", "bilie0"}) {
      auto gens = load_preset(name).generators;
      for (int w = 1; w <= 3; ++w)
        for (auto [m, n] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{1, 3}, std::pair{2, 2},
                            std::pair{3, 1}, std::pair{2, 3}}) {
          if (w == 3 && m + n > 4) continue;
          INFO(name << " (" << m << "," << n << ") weight " << w);
          CHECK(enumerate_connected(gens, w, m, n).size() == brute_force_count(gens, w, m, n));
        }
    }
  }

  TEST_CASE("enumeration is sorted and canonical") {
    auto gens = load_preset("bilie").generators;
    auto codes = enumerate_connected(gens, 3, 2, 2);
    CHECK(std::is_sorted(codes.begin(), codes.end()));
    for (const auto& c : codes) {
      auto cf = canonical_form(decode(c), gens);
      CHECK(cf.code == c);
      CHECK(cf.sign == 1);
    }
  }

  TEST_CASE("two-level graphs: the example with two vertices on each level") {
    // Level 1: v1 of arity (2,3), v2 of arity (2,2); level 2: v3 of arity
    // (1,2), v4 of arity (3,2). Legs as drawn: inputs 1,3,2 into v1 and 4,5
    // into v2; v3 gives output 4, v4 outputs 3,2,1.
    std::vector<Generator> gens{{"t1", 1, 2, Symmetry::Regular, Symmetry::Regular},
                                {"t2", 3, 2, Symmetry::Regular, Symmetry::Regular},
                                {"b1", 2, 3, Symmetry::Regular, Symmetry::Regular},
                                {"b2", 2, 2, Symmetry::Regular, Symmetry::Regular}};
    Graph g = parse_graph_literal(
        "v1=b1; v2=b2; v3=t1; v4=t2; in[1] -> v1.in[1]; in[2] -> v1.in[3]; in[3] -> v1.in[2]; in[4] -> v2.in[1]; "
        "in[5] -> v2.in[2]; v1.out[1] -> v3.in[1]; v1.out[2] -> v4.in[1]; v2.out[1] -> v4.in[2]; "
        "v2.out[2] -> v3.in[2]; v3.out[1] -> out[4]; v4.out[3] -> out[1]; v4.out[2] -> out[2]; v4.out[1] -> out[3]",
        gens);
    REQUIRE_FALSE(check_well_formed(g, gens).has_value());
    CHECK(is_connected(g));
    Graph leveled = structured_cell(g, {0, 1, 2, 3}, {{kLevelOne, 0}, {kLevelOne, 0}, {kLevelTwo, 0}, {kLevelTwo, 0}},
                                    false, 0);
    Code code = canonical_form(leveled, gens).code;
    std::vector<int> top{0, 1}, bottom{2, 3};
    auto connected = enumerate_two_level(gens, top, bottom, 4, 5, true);
    CHECK(std::binary_search(connected.begin(), connected.end(), code));
  }
}
