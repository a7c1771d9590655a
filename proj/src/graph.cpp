#include "propkoszul/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace propkoszul {

Code encode(const Graph& g) {
  Code c;
  c.push_back(g.outputs);
  c.push_back(g.inputs);
  c.push_back(static_cast<int>(g.vertices.size()));
  c.push_back(static_cast<int>(g.blocks.size()));
  c.push_back(static_cast<int>(g.sub_degree.size()));
  for (const auto& b : g.blocks) {
    c.push_back(b.kind);
    c.push_back(b.degree);
  }
  for (int d : g.sub_degree) c.push_back(d);
  for (const auto& v : g.vertices) {
    c.push_back(v.gen);
    c.push_back(v.outputs);
    c.push_back(static_cast<int>(v.in.size()));
    c.push_back(v.block);
    c.push_back(v.sub);
    for (const auto& s : v.in) {
      c.push_back(s.vertex);
      c.push_back(s.port);
    }
  }
  for (const auto& s : g.out) {
    c.push_back(s.vertex);
    c.push_back(s.port);
  }
  return c;
}

Graph decode(const Code& c) {
  std::size_t pos = 0;
  auto next = [&]() {
    if (pos >= c.size()) throw std::invalid_argument("truncated graph code");
    return c[pos++];
  };
  Graph g;
  g.outputs = next();
  g.inputs = next();
  int k = next(), nb = next(), ns = next();
  g.blocks.resize(nb);
  for (auto& b : g.blocks) {
    b.kind = next();
    b.degree = next();
  }
  g.sub_degree.resize(ns);
  for (auto& d : g.sub_degree) d = next();
  g.vertices.resize(k);
  for (auto& v : g.vertices) {
    v.gen = next();
    v.outputs = next();
    int nin = next();
    v.block = next();
    v.sub = next();
    v.in.resize(nin);
    for (auto& s : v.in) {
      s.vertex = next();
      s.port = next();
    }
  }
  g.out.resize(g.outputs);
  for (auto& s : g.out) {
    s.vertex = next();
    s.port = next();
  }
  if (pos != c.size()) throw std::invalid_argument("trailing data in graph code");
  return g;
}

std::vector<std::vector<bool>> reachability(const Graph& g) {
  int k = g.weight();
  std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
  for (int v = 0; v < k; ++v)
    for (const auto& s : g.vertices[v].in)
      if (s.vertex != kGlobal) r[s.vertex][v] = true;
  for (int w = 0; w < k; ++w)
    for (int u = 0; u < k; ++u)
      if (r[u][w])
        for (int v = 0; v < k; ++v)
          if (r[w][v]) r[u][v] = true;
  return r;
}

bool is_acyclic(const Graph& g) {
  auto r = reachability(g);
  for (int v = 0; v < g.weight(); ++v)
    if (r[v][v]) return false;
  return true;
}

bool is_connected(const Graph& g) {
  int k = g.weight();
  if (k == 0) return g.inputs == 1 && g.outputs == 1;
  // Passthrough strands form components of their own.
  for (const auto& s : g.out)
    if (s.vertex == kGlobal) return false;
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int v = 0; v < k; ++v)
    for (const auto& s : g.vertices[v].in)
      if (s.vertex != kGlobal) parent[find(s.vertex)] = find(v);
  int root = find(0);
  for (int v = 1; v < k; ++v)
    if (find(v) != root) return false;
  return true;
}

std::vector<std::pair<int, int>> contractible_pairs(const Graph& g) {
  int k = g.weight();
  std::vector<std::vector<bool>> edge(k, std::vector<bool>(k, false));
  for (int v = 0; v < k; ++v)
    for (const auto& s : g.vertices[v].in)
      if (s.vertex != kGlobal) edge[s.vertex][v] = true;
  auto r = reachability(g);
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      if (!edge[u][v]) continue;
      bool longer = false;
      for (int w = 0; w < k && !longer; ++w)
        if (w != u && w != v && r[u][w] && r[w][v]) longer = true;
      if (!longer) out.emplace_back(u, v);
    }
  return out;
}

std::optional<std::string> check_well_formed(const Graph& g, GeneratorTable gens) {
  int k = g.weight();
  if (g.outputs < 0 || g.inputs < 0) return "negative arity";
  if (static_cast<int>(g.out.size()) != g.outputs) return "global output count mismatch";
  std::vector<int> input_use(g.inputs, 0);
  std::vector<std::vector<int>> port_use(k);
  for (int v = 0; v < k; ++v) {
    const auto& vx = g.vertices[v];
    if (vx.gen >= 0) {
      if (vx.gen >= static_cast<int>(gens.size())) return "unknown generator index";
      const auto& gen = gens[vx.gen];
      if (gen.inputs != static_cast<int>(vx.in.size()) || gen.outputs != vx.outputs)
        return "vertex arity does not match generator '" + gen.id + "'";
    }
    port_use[v].assign(vx.outputs, 0);
  }
  auto use = [&](const PortRef& s) -> std::optional<std::string> {
    if (s.vertex == kGlobal) {
      if (s.port < 0 || s.port >= g.inputs) return "global input out of range";
      ++input_use[s.port];
    } else {
      if (s.vertex < 0 || s.vertex >= k) return "edge source vertex out of range";
      if (s.port < 0 || s.port >= g.vertices[s.vertex].outputs) return "edge source port out of range";
      ++port_use[s.vertex][s.port];
    }
    return std::nullopt;
  };
  for (int v = 0; v < k; ++v)
    for (const auto& s : g.vertices[v].in) {
      if (s.vertex == v) return "loop edge at vertex " + std::to_string(v + 1);
      if (auto e = use(s)) return e;
    }
  for (const auto& s : g.out)
    if (auto e = use(s)) return e;
  for (int i = 0; i < g.inputs; ++i)
    if (input_use[i] != 1) return "global input " + std::to_string(i + 1) + " not used exactly once";
  for (int v = 0; v < k; ++v)
    for (std::size_t p = 0; p < port_use[v].size(); ++p)
      if (port_use[v][p] != 1)
        return "dangling or reused out-port " + std::to_string(p + 1) + " of vertex " +
               std::to_string(v + 1);
  if (!is_acyclic(g)) return "graph has a directed cycle";
  std::vector<int> sub_owner(g.sub_degree.size(), -1);
  std::set<int> closed_blocks, closed_subs;
  int prev_block = -1, prev_sub = -1;
  for (const auto& vx : g.vertices) {
    if (vx.block < 0 || vx.block >= static_cast<int>(g.blocks.size())) return "block id out of range";
    if (vx.sub < 0 || vx.sub >= static_cast<int>(g.sub_degree.size())) return "sub-block id out of range";
    if (sub_owner[vx.sub] == -1) sub_owner[vx.sub] = vx.block;
    if (sub_owner[vx.sub] != vx.block) return "sub-block spans two blocks";
    if (vx.block != prev_block) {
      if (closed_blocks.count(vx.block)) return "block vertices are not contiguous";
      if (prev_block >= 0) closed_blocks.insert(prev_block);
    }
    if (vx.sub != prev_sub) {
      if (closed_subs.count(vx.sub)) return "sub-block vertices are not contiguous";
      if (prev_sub >= 0) closed_subs.insert(prev_sub);
    }
    prev_block = vx.block;
    prev_sub = vx.sub;
  }
  return std::nullopt;
}

Graph with_singleton_blocks(Graph g, int kind, int degree) {
  g.blocks.assign(g.vertices.size(), Block{kind, degree});
  g.sub_degree.assign(g.vertices.size(), 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    g.vertices[v].block = static_cast<int>(v);
    g.vertices[v].sub = static_cast<int>(v);
  }
  return g;
}

namespace {

int permutation_parity_sign(const std::vector<int>& from, const std::vector<int>& to) {
  // Both are arrangements of the same distinct ids.
  std::map<int, int> pos;
  for (std::size_t i = 0; i < to.size(); ++i) pos[to[i]] = static_cast<int>(i);
  std::vector<int> p(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) p[i] = pos.at(from[i]);
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

/// Odd graded symbols in the order induced by a vertex ordering.
std::vector<int> odd_symbols(const Graph& g, const std::vector<int>& order) {
  std::vector<int> out;
  std::vector<bool> seen_b(g.blocks.size(), false), seen_s(g.sub_degree.size(), false);
  int nb = static_cast<int>(g.blocks.size());
  for (int v : order) {
    const auto& vx = g.vertices[v];
    if (!seen_b[vx.block]) {
      seen_b[vx.block] = true;
      if (g.blocks[vx.block].degree % 2 != 0) out.push_back(vx.block);
    }
    if (!seen_s[vx.sub]) {
      seen_s[vx.sub] = true;
      if (g.sub_degree[vx.sub] % 2 != 0) out.push_back(nb + vx.sub);
    }
  }
  return out;
}

bool grouped(const Graph& g, const std::vector<int>& order) {
  std::vector<bool> closed_b(g.blocks.size(), false), closed_s(g.sub_degree.size(), false);
  int pb = -1, ps = -1;
  for (int v : order) {
    const auto& vx = g.vertices[v];
    if (vx.block != pb) {
      if (closed_b[vx.block]) return false;
      if (pb >= 0) closed_b[pb] = true;
    }
    if (vx.sub != ps) {
      if (closed_s[vx.sub]) return false;
      if (ps >= 0) closed_s[ps] = true;
    }
    pb = vx.block;
    ps = vx.sub;
  }
  return true;
}

bool permutable(Symmetry s) { return s != Symmetry::Regular; }

}  // namespace

CanonicalGraph canonical_form(const Graph& g, GeneratorTable gens) {
  const int k = g.weight();
  std::vector<int> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  const std::vector<int> base_odd = odd_symbols(g, identity);

  // Allowed port permutations per original vertex.
  std::vector<std::vector<Permutation>> in_perms(k), out_perms(k);
  std::vector<std::vector<int>> in_signs(k), out_signs(k);
  for (int v = 0; v < k; ++v) {
    const auto& vx = g.vertices[v];
    Symmetry left = Symmetry::Regular, right = Symmetry::Regular;
    if (vx.gen >= 0) {
      left = gens[vx.gen].left;
      right = gens[vx.gen].right;
    }
    int nin = static_cast<int>(vx.in.size());
    in_perms[v] = permutable(right) ? all_permutations(nin) : std::vector{Permutation::identity(nin)};
    out_perms[v] = permutable(left) ? all_permutations(vx.outputs)
                                    : std::vector{Permutation::identity(vx.outputs)};
    for (const auto& p : in_perms[v]) in_signs[v].push_back(right == Symmetry::Sign ? p.sign() : 1);
    for (const auto& p : out_perms[v]) out_signs[v].push_back(left == Symmetry::Sign ? p.sign() : 1);
  }

  Code best;
  int best_sign = 0;
  bool vanishes = false;
  bool have_best = false;

  std::vector<int> order = identity;
  std::vector<int> new_index(k);
  std::vector<int> block_rank(g.blocks.size()), sub_rank(g.sub_degree.size());
  std::vector<std::size_t> in_choice(k), out_choice(k);
  // out_new_port[v][p]: new position of old out-port p of old vertex v.
  std::vector<std::vector<int>> out_new_port(k);
  Code code;

  do {
    if (!grouped(g, order)) continue;
    for (int i = 0; i < k; ++i) new_index[order[i]] = i;
    int koszul = permutation_parity_sign(base_odd, odd_symbols(g, order));
    std::fill(block_rank.begin(), block_rank.end(), -1);
    std::fill(sub_rank.begin(), sub_rank.end(), -1);
    int nb = 0, ns = 0;
    for (int v : order) {
      const auto& vx = g.vertices[v];
      if (block_rank[vx.block] < 0) block_rank[vx.block] = nb++;
      if (sub_rank[vx.sub] < 0) sub_rank[vx.sub] = ns++;
    }
    std::vector<int> block_of_rank(nb), sub_of_rank(ns);
    for (std::size_t b = 0; b < block_rank.size(); ++b)
      if (block_rank[b] >= 0) block_of_rank[block_rank[b]] = static_cast<int>(b);
    for (std::size_t s = 0; s < sub_rank.size(); ++s)
      if (sub_rank[s] >= 0) sub_of_rank[sub_rank[s]] = static_cast<int>(s);

    std::fill(in_choice.begin(), in_choice.end(), 0);
    std::fill(out_choice.begin(), out_choice.end(), 0);
    while (true) {
      int sign = koszul;
      for (int v = 0; v < k; ++v) {
        sign *= in_signs[v][in_choice[v]] * out_signs[v][out_choice[v]];
        const auto& rho = out_perms[v][out_choice[v]];
        out_new_port[v].assign(rho.size(), 0);
        for (int q = 0; q < rho.size(); ++q) out_new_port[v][rho(q)] = q;
      }
      auto src_code = [&](const PortRef& s, Code& c) {
        if (s.vertex == kGlobal) {
          c.push_back(kGlobal);
          c.push_back(s.port);
        } else {
          c.push_back(new_index[s.vertex]);
          c.push_back(out_new_port[s.vertex][s.port]);
        }
      };
      code.clear();
      code.push_back(g.outputs);
      code.push_back(g.inputs);
      code.push_back(k);
      code.push_back(nb);
      code.push_back(ns);
      for (int r = 0; r < nb; ++r) {
        code.push_back(g.blocks[block_of_rank[r]].kind);
        code.push_back(g.blocks[block_of_rank[r]].degree);
      }
      for (int r = 0; r < ns; ++r) code.push_back(g.sub_degree[sub_of_rank[r]]);
      for (int i = 0; i < k; ++i) {
        int v = order[i];
        const auto& vx = g.vertices[v];
        code.push_back(vx.gen);
        code.push_back(vx.outputs);
        code.push_back(static_cast<int>(vx.in.size()));
        code.push_back(block_rank[vx.block]);
        code.push_back(sub_rank[vx.sub]);
        const auto& pi = in_perms[v][in_choice[v]];
        for (int q = 0; q < pi.size(); ++q) src_code(vx.in[pi(q)], code);
      }
      for (const auto& s : g.out) src_code(s, code);

      if (!have_best || code < best) {
        best = code;
        best_sign = sign;
        vanishes = false;
        have_best = true;
      } else if (code == best && sign != best_sign) {
        vanishes = true;
      }

      int v = 0;
      for (; v < k; ++v) {
        if (++in_choice[v] < in_perms[v].size()) break;
        in_choice[v] = 0;
        if (++out_choice[v] < out_perms[v].size()) break;
        out_choice[v] = 0;
      }
      if (v == k) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  return CanonicalGraph{best, vanishes ? 0 : best_sign};
}

Graph relabel_legs(const Graph& g, const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != g.outputs || tau.size() != g.inputs)
    throw std::invalid_argument("leg relabeling has wrong size");
  Graph h = g;
  for (int k = 0; k < g.outputs; ++k) h.out[sigma(k)] = g.out[k];
  auto fix = [&](PortRef& s) {
    if (s.vertex == kGlobal) s.port = tau(s.port);
  };
  for (auto& v : h.vertices)
    for (auto& s : v.in) fix(s);
  for (auto& s : h.out) fix(s);
  return h;
}

void add_to(LinComb& lc, const Code& code, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = lc.emplace(code, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) lc.erase(it);
  }
}

void add_term(LinComb& lc, const Graph& g, const Rational& coef, GeneratorTable gens) {
  auto c = canonical_form(g, gens);
  if (c.sign == 0) return;
  add_to(lc, c.code, c.sign * coef);
}

LinComb canonicalize(const std::vector<std::pair<Rational, Graph>>& terms, GeneratorTable gens) {
  LinComb lc;
  for (const auto& [coef, g] : terms) add_term(lc, g, coef, gens);
  return lc;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Parses `name[k]` and returns k (1-based as written).
int bracket_index(const std::string& s, const std::string& expected_name) {
  auto lb = s.find('['), rb = s.find(']');
  if (lb == std::string::npos || rb == std::string::npos || rb != s.size() - 1 ||
      trim(s.substr(0, lb)) != expected_name)
    throw std::invalid_argument("expected " + expected_name + "[k], got '" + s + "'");
  std::string num = trim(s.substr(lb + 1, rb - lb - 1));
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad index in '" + s + "'");
  int k = std::stoi(num);
  if (k < 1) throw std::invalid_argument("indices are 1-based in '" + s + "'");
  return k;
}

}  // namespace

Graph parse_graph_literal(const std::string& text, GeneratorTable gens) {
  std::map<std::string, int> names;
  Graph g;
  struct Edge {
    std::string lhs, rhs;
  };
  std::vector<Edge> edges;
  std::stringstream ss(text);
  std::string stmt;
  while (std::getline(ss, stmt, ';')) {
    stmt = trim(stmt);
    if (stmt.empty()) continue;
    auto arrow = stmt.find("->");
    if (arrow != std::string::npos) {
      edges.push_back({trim(stmt.substr(0, arrow)), trim(stmt.substr(arrow + 2))});
      continue;
    }
    auto eq = stmt.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed graph statement '" + stmt + "'");
    std::string name = trim(stmt.substr(0, eq)), gen = trim(stmt.substr(eq + 1));
    if (name.empty() || names.count(name) || name == "in" || name == "out")
      throw std::invalid_argument("bad or duplicate vertex name '" + name + "'");
    auto it = std::find_if(gens.begin(), gens.end(), [&](const Generator& x) { return x.id == gen; });
    if (it == gens.end()) throw std::invalid_argument("unknown generator '" + gen + "'");
    Vertex v;
    v.gen = static_cast<int>(it - gens.begin());
    v.outputs = it->outputs;
    v.in.assign(it->inputs, PortRef{-2, -2});
    names[name] = g.weight();
    g.vertices.push_back(std::move(v));
  }
  auto vertex_port = [&](const std::string& s, const std::string& side) {
    auto dot = s.find('.');
    if (dot == std::string::npos) throw std::invalid_argument("expected vertex.port in '" + s + "'");
    auto it = names.find(trim(s.substr(0, dot)));
    if (it == names.end()) throw std::invalid_argument("undeclared vertex in '" + s + "'");
    return std::pair{it->second, bracket_index(trim(s.substr(dot + 1)), side) - 1};
  };
  std::map<int, PortRef> outs;
  int max_in = 0;
  for (const auto& e : edges) {
    PortRef src;
    if (e.lhs.rfind("in[", 0) == 0) {
      src = {kGlobal, bracket_index(e.lhs, "in") - 1};
      max_in = std::max(max_in, src.port + 1);
    } else {
      auto [v, p] = vertex_port(e.lhs, "out");
      if (p >= g.vertices[v].outputs) throw std::invalid_argument("out-port out of range in '" + e.lhs + "'");
      src = {v, p};
    }
    if (e.rhs.rfind("out[", 0) == 0) {
      int k = bracket_index(e.rhs, "out") - 1;
      if (outs.count(k)) throw std::invalid_argument("global output assigned twice: '" + e.rhs + "'");
      outs[k] = src;
    } else {
      auto [v, j] = vertex_port(e.rhs, "in");
      auto& slot = g.vertices[v].in;
      if (j >= static_cast<int>(slot.size())) throw std::invalid_argument("in-port out of range in '" + e.rhs + "'");
      if (slot[j].vertex != -2) throw std::invalid_argument("in-port fed twice: '" + e.rhs + "'");
      slot[j] = src;
    }
  }
  for (const auto& v : g.vertices)
    for (const auto& s : v.in)
      if (s.vertex == -2) throw std::invalid_argument("dangling in-port in graph literal");
  g.outputs = static_cast<int>(outs.size());
  for (int k = 0; k < g.outputs; ++k) {
    if (!outs.count(k)) throw std::invalid_argument("global outputs are not numbered 1..m");
    g.out.push_back(outs[k]);
  }
  g.inputs = max_in;
  g = with_singleton_blocks(std::move(g), kPlain, 0);
  if (auto err = check_well_formed(g, gens)) throw std::invalid_argument("malformed graph literal: " + *err);
  return g;
}

std::string format_graph_literal(const Graph& g, GeneratorTable gens) {
  std::ostringstream os;
  auto name = [](int v) { return "v" + std::to_string(v + 1); };
  bool first = true;
  auto sep = [&]() {
    if (!first) os << "; ";
    first = false;
  };
  for (int v = 0; v < g.weight(); ++v) {
    sep();
    int gen = g.vertices[v].gen;
    os << name(v) << "=" << (gen >= 0 ? gens[gen].id : std::string("composite"));
  }
  auto src = [&](const PortRef& s) {
    if (s.vertex == kGlobal) return "in[" + std::to_string(s.port + 1) + "]";
    return name(s.vertex) + ".out[" + std::to_string(s.port + 1) + "]";
  };
  for (int v = 0; v < g.weight(); ++v)
    for (std::size_t j = 0; j < g.vertices[v].in.size(); ++j) {
      sep();
      os << src(g.vertices[v].in[j]) << " -> " << name(v) << ".in[" << j + 1 << "]";
    }
  for (int k = 0; k < g.outputs; ++k) {
    sep();
    os << src(g.out[k]) << " -> out[" << k + 1 << "]";
  }
  return os.str();
}

Contraction contract_edge_pair(const Graph& g, int u, int v) {
  int k = g.weight();
  if (u < 0 || v < 0 || u >= k || v >= k || u == v) throw std::invalid_argument("bad vertex indices");
  auto feeds = [&](int a, int b) {
    for (const auto& s : g.vertices[b].in)
      if (s.vertex == a) return true;
    return false;
  };
  if (feeds(v, u)) std::swap(u, v);
  if (!feeds(u, v)) throw std::invalid_argument("vertices are not adjacent");
  auto r = reachability(g);
  for (int w = 0; w < k; ++w)
    if (w != u && w != v && r[u][w] && r[w][v])
      throw std::invalid_argument("contraction would create a directed cycle");

  Contraction res;
  // Merged vertex ports: external ports of the lower vertex u, then of v.
  std::map<std::pair<int, int>, int> merged_out;  // (orig vertex, port) -> merged port
  for (int p = 0; p < g.vertices[u].outputs; ++p) {
    bool internal = false;
    for (const auto& s : g.vertices[v].in)
      if (s.vertex == u && s.port == p) internal = true;
    if (!internal) {
      merged_out[{u, p}] = static_cast<int>(res.out_ports.size());
      res.out_ports.emplace_back(u, p);
    }
  }
  for (int p = 0; p < g.vertices[v].outputs; ++p) {
    merged_out[{v, p}] = static_cast<int>(res.out_ports.size());
    res.out_ports.emplace_back(v, p);
  }
  std::vector<PortRef> merged_in;
  for (std::size_t j = 0; j < g.vertices[u].in.size(); ++j) {
    res.in_ports.emplace_back(u, static_cast<int>(j));
    merged_in.push_back(g.vertices[u].in[j]);
  }
  for (std::size_t j = 0; j < g.vertices[v].in.size(); ++j)
    if (g.vertices[v].in[j].vertex != u) {
      res.in_ports.emplace_back(v, static_cast<int>(j));
      merged_in.push_back(g.vertices[v].in[j]);
    }

  int keep = std::min(u, v), drop = std::max(u, v);
  auto new_index = [&](int w) {
    if (w == u || w == v) return keep;
    return w > drop ? w - 1 : w;
  };
  auto remap = [&](const PortRef& s) -> PortRef {
    if (s.vertex == kGlobal) return s;
    if (s.vertex == u || s.vertex == v) return {keep, merged_out.at({s.vertex, s.port})};
    return {new_index(s.vertex), s.port};
  };
  Graph h;
  h.outputs = g.outputs;
  h.inputs = g.inputs;
  h.blocks = g.blocks;
  h.sub_degree = g.sub_degree;
  for (int w = 0; w < k; ++w) {
    if (w == drop) continue;
    if (w == keep) {
      Vertex m;
      m.gen = kCompositeGen;
      m.outputs = static_cast<int>(res.out_ports.size());
      for (const auto& s : merged_in) m.in.push_back(remap(s));
      m.block = g.vertices[u].block;
      m.sub = g.vertices[u].sub;
      h.vertices.push_back(std::move(m));
    } else {
      Vertex x = g.vertices[w];
      for (auto& s : x.in) s = remap(s);
      h.vertices.push_back(std::move(x));
    }
  }
  for (const auto& s : g.out) h.out.push_back(remap(s));
  res.graph = std::move(h);
  res.merged = keep;
  return res;
}

}  // namespace propkoszul
