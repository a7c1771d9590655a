#include "propkoszul/enumerate.hpp"

#include <functional>
#include <set>

namespace propkoszul {

namespace {

struct Slot {
  int vertex;
  int port;
};

/// Wires a fixed vertex list in every admissible way; legs are numbered in
/// slot order, so the result has to be expanded over leg relabelings.
class Wirer {
 public:
  Wirer(GeneratorTable gens, std::vector<Vertex> vertices, std::vector<Block> blocks, int m, int n,
        bool connected_only, std::function<bool(int, int)> edge_ok)
      : gens_(gens), m_(m), n_(n), connected_only_(connected_only), edge_ok_(std::move(edge_ok)) {
    base_.outputs = m;
    base_.inputs = n;
    base_.vertices = std::move(vertices);
    base_.blocks = std::move(blocks);
    base_.sub_degree.assign(base_.vertices.size(), 0);
    for (std::size_t v = 0; v < base_.vertices.size(); ++v) {
      base_.vertices[v].block = static_cast<int>(v);
      base_.vertices[v].sub = static_cast<int>(v);
      for (std::size_t j = 0; j < base_.vertices[v].in.size(); ++j)
        slots_.push_back({static_cast<int>(v), static_cast<int>(j)});
      used_.emplace_back(base_.vertices[v].outputs, false);
    }
  }

  void run(std::set<Code>& out) {
    out_ = &out;
    recurse(0, 0);
  }

 private:
  void recurse(std::size_t slot, int globals) {
    if (slot == slots_.size()) {
      finish(globals);
      return;
    }
    auto [v, j] = slots_[slot];
    if (globals < n_) {
      base_.vertices[v].in[j] = {kGlobal, globals};
      recurse(slot + 1, globals + 1);
    }
    for (int u = 0; u < static_cast<int>(base_.vertices.size()); ++u) {
      if (u == v || !edge_ok_(u, v)) continue;
      for (int q = 0; q < base_.vertices[u].outputs; ++q) {
        if (used_[u][q]) continue;
        used_[u][q] = true;
        base_.vertices[v].in[j] = {u, q};
        recurse(slot + 1, globals);
        used_[u][q] = false;
      }
    }
  }

  void finish(int globals) {
    int passthrough = n_ - globals;
    std::vector<PortRef> leftovers;
    for (int u = 0; u < static_cast<int>(base_.vertices.size()); ++u)
      for (int q = 0; q < base_.vertices[u].outputs; ++q)
        if (!used_[u][q]) leftovers.push_back({u, q});
    if (static_cast<int>(leftovers.size()) + passthrough != m_) return;
    if (passthrough > 0 && connected_only_ && !(base_.vertices.empty() && m_ == 1 && n_ == 1)) return;
    Graph g = base_;
    g.out = leftovers;
    for (int p = 0; p < passthrough; ++p) g.out.push_back({kGlobal, globals + p});
    if (!is_acyclic(g)) return;
    if (connected_only_ && !is_connected(g)) return;
    auto c = canonical_form(g, gens_);
    if (c.sign != 0) out_->insert(c.code);
  }

  GeneratorTable gens_;
  int m_, n_;
  bool connected_only_;
  std::function<bool(int, int)> edge_ok_;
  Graph base_;
  std::vector<Slot> slots_;
  std::vector<std::vector<bool>> used_;
  std::set<Code>* out_ = nullptr;
};

Vertex fresh_vertex(GeneratorTable gens, int gen) {
  Vertex v;
  v.gen = gen;
  v.outputs = gens[gen].outputs;
  v.in.assign(gens[gen].inputs, PortRef{});
  return v;
}

std::vector<Code> expand_legs(const std::set<Code>& shapes, GeneratorTable gens, int m, int n) {
  auto sigmas = all_permutations(m);
  auto taus = all_permutations(n);
  std::set<Code> all;
  for (const auto& code : shapes) {
    Graph g = decode(code);
    for (const auto& s : sigmas)
      for (const auto& t : taus) {
        auto c = canonical_form(relabel_legs(g, s, t), gens);
        if (c.sign != 0) all.insert(c.code);
      }
  }
  return {all.begin(), all.end()};
}

/// Calls f on every nondecreasing sequence of length k over `choices`.
void for_each_multiset(std::span<const int> choices, int k, std::vector<int>& cur, std::size_t from,
                       const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == k) {
    f(cur);
    return;
  }
  for (std::size_t i = from; i < choices.size(); ++i) {
    cur.push_back(choices[i]);
    for_each_multiset(choices, k, cur, i, f);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Code> enumerate_free(GeneratorTable gens, int weight, int m, int n, bool connected_only) {
  std::set<Code> shapes;
  std::vector<int> all(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> cur;
  for_each_multiset(all, weight, cur, 0, [&](const std::vector<int>& choice) {
    int outs = 0, ins = 0;
    for (int g : choice) {
      outs += gens[g].outputs;
      ins += gens[g].inputs;
    }
    if (outs - ins != m - n) return;
    // Without passthrough strands a connected graph needs a spanning tree.
    if (connected_only && ins - n < weight - 1) return;
    std::vector<Vertex> vs;
    for (int g : choice) vs.push_back(fresh_vertex(gens, g));
    Wirer w(gens, std::move(vs), std::vector<Block>(choice.size(), Block{kPlain, 0}), m, n,
            connected_only, [](int, int) { return true; });
    w.run(shapes);
  });
  return expand_legs(shapes, gens, m, n);
}

std::vector<Code> enumerate_two_level(GeneratorTable gens, std::span<const int> top,
                                      std::span<const int> bottom, int m, int n,
                                      bool connected_only) {
  std::set<Code> shapes;
  std::vector<int> cur_b, cur_t;
  for (int a = 0; a <= n; ++a) {
    for_each_multiset(bottom, a, cur_b, 0, [&](const std::vector<int>& lower) {
      for (int b = 0; b <= m; ++b) {
        for_each_multiset(top, b, cur_t, 0, [&](const std::vector<int>& upper) {
          std::vector<Vertex> vs;
          std::vector<Block> blocks;
          for (int g : lower) {
            vs.push_back(fresh_vertex(gens, g));
            blocks.push_back({kLevelOne, 0});
          }
          for (int g : upper) {
            vs.push_back(fresh_vertex(gens, g));
            blocks.push_back({kLevelTwo, 0});
          }
          int nlow = static_cast<int>(lower.size());
          Wirer w(gens, std::move(vs), std::move(blocks), m, n, connected_only,
                  [nlow](int u, int v) { return u < nlow && v >= nlow; });
          w.run(shapes);
        });
      }
    });
  }
  return expand_legs(shapes, gens, m, n);
}

}  // namespace propkoszul
