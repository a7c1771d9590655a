#include "propkoszul/gebra.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace propkoszul {

namespace {

using nlohmann::json;

std::size_t power(int d, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<std::size_t>(d);
  return p;
}

const Generator& generator_named(const Presentation& p, const std::string& id) {
  for (const auto& g : p.generators)
    if (g.id == id) return g;
  throw std::invalid_argument("unknown generator '" + id + "'");
}

RationalMatrix kron_power(const RationalMatrix& b, int k) {
  RationalMatrix out = RationalMatrix::identity(1);
  for (int i = 0; i < k; ++i) out = kronecker(out, b);
  return out;
}

using Dense = std::vector<std::vector<Rational>>;

Dense to_dense(const RationalMatrix& m) {
  Dense d(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) d[r][c] = v;
  return d;
}

RationalMatrix map_of(const Presentation& p, const GebraStructure& s, int gen) {
  const auto& g = p.generators[gen];
  auto it = s.maps.find(g.id);
  if (it == s.maps.end()) return RationalMatrix(power(s.dimension, g.outputs), power(s.dimension, g.inputs));
  return it->second;
}

void check_shapes(const Presentation& p, const GebraStructure& s) {
  if (s.dimension < 1) throw std::invalid_argument("gebra dimension must be positive");
  for (const auto& [id, m] : s.maps) {
    const auto& g = generator_named(p, id);
    if (m.rows() != power(s.dimension, g.outputs) || m.cols() != power(s.dimension, g.inputs))
      throw std::invalid_argument("map for '" + id + "' has the wrong shape");
  }
}

/// Applies the adjacent transposition (k, k+1) to the legs of a flat index.
std::size_t swap_legs(std::size_t flat, int legs, int d, int k) {
  auto multi = unflatten_index(flat, legs, d);
  std::swap(multi[k], multi[k + 1]);
  return flatten_index(multi, d);
}

std::vector<int> one_based(std::vector<int> v) {
  for (int& x : v) ++x;
  return v;
}

}  // namespace

std::vector<int> unflatten_index(std::size_t flat, int legs, int dimension) {
  std::vector<int> multi(legs);
  for (int k = legs - 1; k >= 0; --k) {
    multi[k] = static_cast<int>(flat % static_cast<std::size_t>(dimension));
    flat /= static_cast<std::size_t>(dimension);
  }
  return multi;
}

std::size_t flatten_index(const std::vector<int>& multi, int dimension) {
  std::size_t flat = 0;
  for (int i : multi) flat = flat * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(i);
  return flat;
}

GebraStructure parse_gebra_structure(const std::string& document, const Presentation& p) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("gebra structure is not valid JSON: ") + e.what());
  }
  GebraStructure s;
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
    throw std::invalid_argument("gebra structure needs an integer 'dimension'");
  s.dimension = doc["dimension"].get<int>();
  if (s.dimension < 1) throw std::invalid_argument("gebra dimension must be positive");
  for (const auto& m : doc.value("maps", json::array())) {
    const std::string id = m.at("generator").get<std::string>();
    const auto& g = generator_named(p, id);
    RationalMatrix mat(power(s.dimension, g.outputs), power(s.dimension, g.inputs));
    for (const auto& e : m.value("entries", json::array())) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("entry of '" + id + "' must be [out, in, q]");
      auto out = e[0].get<std::vector<int>>();
      auto in = e[1].get<std::vector<int>>();
      if (static_cast<int>(out.size()) != g.outputs || static_cast<int>(in.size()) != g.inputs)
        throw std::invalid_argument("entry of '" + id + "' has multi-indices of the wrong length");
      for (auto* v : {&out, &in})
        for (int& x : *v) {
          if (x < 1 || x > s.dimension) throw std::invalid_argument("entry index out of range for '" + id + "'");
          --x;
        }
      Rational q = e[2].is_string() ? parse_rational(e[2].get<std::string>()) : Rational(e[2].get<long>());
      std::size_t r = flatten_index(out, s.dimension), c = flatten_index(in, s.dimension);
      mat.set(r, c, mat.at(r, c) + q);
    }
    if (s.maps.count(id)) throw std::invalid_argument("two maps for generator '" + id + "'");
    s.maps.emplace(id, std::move(mat));
  }
  return s;
}

GebraStructure load_gebra_file(const std::string& path, const Presentation& p) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gebra structure file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gebra_structure(ss.str(), p);
}

RationalMatrix evaluate_graph(const Graph& g, const Presentation& p, const GebraStructure& s) {
  check_shapes(p, s);
  const int d = s.dimension;
  // Wires: global inputs first, then every vertex out-port.
  std::vector<std::vector<int>> wire_of_port(g.weight());
  int wires = g.inputs;
  for (int v = 0; v < g.weight(); ++v) {
    if (g.vertices[v].gen < 0) throw std::invalid_argument("cannot evaluate a composite vertex");
    for (int q = 0; q < g.vertices[v].outputs; ++q) wire_of_port[v].push_back(wires++);
  }
  auto wire = [&](const PortRef& s) { return s.vertex == kGlobal ? s.port : wire_of_port[s.vertex][s.port]; };
  std::vector<Dense> maps;
  for (const auto& v : g.vertices) maps.push_back(to_dense(map_of(p, s, v.gen)));

  std::vector<std::vector<Rational>> value(power(d, g.outputs), std::vector<Rational>(power(d, g.inputs)));
  std::vector<int> idx(wires, 0);
  std::vector<int> buf;
  while (true) {
    Rational prod = 1;
    for (int v = 0; v < g.weight() && prod != 0; ++v) {
      std::size_t row = 0, col = 0;
      for (int w : wire_of_port[v]) row = row * d + idx[w];
      for (const auto& src : g.vertices[v].in) col = col * d + idx[wire(src)];
      prod *= maps[v][row][col];
    }
    if (prod != 0) {
      std::size_t row = 0, col = 0;
      for (const auto& src : g.out) row = row * d + idx[wire(src)];
      for (int i = 0; i < g.inputs; ++i) col = col * d + idx[i];
      value[row][col] += prod;
    }
    int k = wires - 1;
    for (; k >= 0; --k) {
      if (++idx[k] < d) break;
      idx[k] = 0;
    }
    if (k < 0) break;
  }
  return RationalMatrix::from_dense(value);
}

bool GebraReport::pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

GebraReport gebra_check(const Presentation& p, const GebraStructure& s) {
  check_shapes(p, s);
  GebraReport rep;
  rep.presentation = p.name;
  const int d = s.dimension;
  for (std::size_t gi = 0; gi < p.generators.size(); ++gi) {
    const auto& g = p.generators[gi];
    if (g.left == Symmetry::Regular && g.right == Symmetry::Regular) continue;
    GebraCheckEntry e;
    e.name = "symmetry " + g.id;
    Dense f = to_dense(map_of(p, s, static_cast<int>(gi)));
    auto check_side = [&](Symmetry sym, bool outputs) {
      if (sym == Symmetry::Regular || e.witness) return;
      const int legs = outputs ? g.outputs : g.inputs;
      const Rational chi = sym == Symmetry::Sign ? -1 : 1;
      for (int k = 0; k + 1 < legs && !e.witness; ++k)
        for (std::size_t c = 0; c < f.front().size() && !e.witness; ++c)
          for (std::size_t r = 0; r < f.size() && !e.witness; ++r) {
            Rational moved = outputs ? f[swap_legs(r, legs, d, k)][c] : f[r][swap_legs(c, legs, d, k)];
            Rational diff = moved - chi * f[r][c];
            if (diff != 0)
              e.witness = GebraWitness{one_based(unflatten_index(r, g.outputs, d)),
                                       one_based(unflatten_index(c, g.inputs, d)), diff};
          }
    };
    check_side(g.left, true);
    check_side(g.right, false);
    e.pass = !e.witness;
    rep.entries.push_back(std::move(e));
  }
  for (std::size_t ri = 0; ri < p.relations.size(); ++ri) {
    const auto& rel = p.relations[ri];
    GebraCheckEntry e;
    e.name = "relation " + std::to_string(ri + 1) + " (" + std::to_string(rel.outputs) + "," +
             std::to_string(rel.inputs) + ")";
    RationalMatrix total(power(d, rel.outputs), power(d, rel.inputs));
    std::vector<SparseVec> cols(total.cols());
    for (const auto& [code, coef] : rel.terms) {
      RationalMatrix t = evaluate_graph(decode(code), p, s);
      for (std::size_t c = 0; c < t.cols(); ++c) cols[c] = axpy(cols[c], coef, t.column(c));
    }
    for (std::size_t c = 0; c < cols.size() && !e.witness; ++c)
      if (!cols[c].empty())
        e.witness = GebraWitness{one_based(unflatten_index(cols[c].front().first, rel.outputs, d)),
                                 one_based(unflatten_index(c, rel.inputs, d)), cols[c].front().second};
    e.pass = !e.witness;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

GebraStructure base_change(const GebraStructure& s, const Presentation& p, const RationalMatrix& b) {
  auto inv = inverse(b);
  if (!inv || b.rows() != static_cast<std::size_t>(s.dimension))
    throw std::invalid_argument("base change must be an invertible dimension x dimension matrix");
  GebraStructure out;
  out.dimension = s.dimension;
  for (const auto& [id, m] : s.maps) {
    const auto& g = generator_named(p, id);
    out.maps.emplace(id, kron_power(b, g.outputs) * m * kron_power(*inv, g.inputs));
  }
  return out;
}

}  // namespace propkoszul
