#include "propkoszul/presets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace propkoszul {

namespace {

#include "preset_data.inc"

using nlohmann::json;

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw std::invalid_argument(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(where + ": field '" + std::string(key) + "' has the wrong type");
  }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? field<T>(j, key, where) : fallback;
}

json array_field(const json& j, const char* key, const std::string& where, bool required = true) {
  if (!j.contains(key)) {
    if (required) throw std::invalid_argument(where + ": missing field '" + key + "'");
    return json::array();
  }
  if (!j.at(key).is_array()) throw std::invalid_argument(where + ": field '" + std::string(key) + "' must be a list");
  return j.at(key);
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kPresetTable) out.emplace_back(name);
  return out;
}

Presentation load_preset(const std::string& name) {
  for (const auto& [key, text] : kPresetTable)
    if (name == key) return parse_presentation(text);
  throw std::invalid_argument("unknown preset '" + name + "'");
}

Presentation parse_presentation(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("presentation is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("presentation must be a JSON object");
  Presentation p;
  p.name = optional_field<std::string>(doc, "name", "unnamed", "presentation");
  p.description = optional_field<std::string>(doc, "description", "", "presentation");

  for (const auto& g : array_field(doc, "generators", "presentation")) {
    std::string where = "generator";
    if (!g.is_object()) throw std::invalid_argument(where + " must be a JSON object");
    Generator gen;
    gen.id = field<std::string>(g, "id", where);
    where += " '" + gen.id + "'";
    gen.outputs = field<int>(g, "outputs", where);
    gen.inputs = field<int>(g, "inputs", where);
    try {
      gen.left = parse_symmetry(optional_field<std::string>(g, "left_symmetry", "regular", where));
      gen.right = parse_symmetry(optional_field<std::string>(g, "right_symmetry", "regular", where));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    p.generators.push_back(std::move(gen));
  }

  int index = 0;
  for (const auto& r : array_field(doc, "relations", "presentation", false)) {
    const std::string where = "relation " + std::to_string(++index);
    if (!r.is_object()) throw std::invalid_argument(where + " must be a JSON object");
    auto comp = field<std::vector<int>>(r, "component", where);
    if (comp.size() != 2) throw std::invalid_argument(where + ": component must be [m, n]");
    RelationRecord rec;
    rec.outputs = comp[0];
    rec.inputs = comp[1];
    int t = 0;
    for (const auto& term : array_field(r, "terms", where)) {
      const std::string tw = where + ", term " + std::to_string(++t);
      Rational coef;
      Graph g;
      try {
        const auto& c = term.at("coef");
        coef = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
        g = parse_graph_literal(field<std::string>(term, "graph", tw), p.generators);
      } catch (const std::exception& e) {
        throw std::invalid_argument(tw + ": " + e.what());
      }
      if (g.weight() != 2) throw std::invalid_argument(tw + ": relation graphs must have exactly 2 vertices");
      if (!is_connected(g)) throw std::invalid_argument(tw + ": relation graphs must be connected");
      if (g.outputs != rec.outputs || g.inputs != rec.inputs)
        throw std::invalid_argument(tw + ": graph arity (" + std::to_string(g.outputs) + "," +
                                    std::to_string(g.inputs) + ") does not match the component");
      add_term(rec.terms, g, coef, p.generators);
    }
    if (rec.terms.empty()) throw std::invalid_argument(where + ": relation is zero");
    p.relations.push_back(std::move(rec));
  }
  if (auto err = validate_presentation(p)) throw std::invalid_argument(*err);
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  json doc;
  doc["name"] = p.name;
  if (!p.description.empty()) doc["description"] = p.description;
  doc["generators"] = json::array();
  for (const auto& g : p.generators)
    doc["generators"].push_back({{"id", g.id},
                                 {"outputs", g.outputs},
                                 {"inputs", g.inputs},
                                 {"left_symmetry", to_string(g.left)},
                                 {"right_symmetry", to_string(g.right)}});
  doc["relations"] = json::array();
  for (const auto& r : p.relations) {
    json terms = json::array();
    for (const auto& [code, coef] : r.terms)
      terms.push_back({{"coef", format_rational(coef)}, {"graph", format_graph_literal(decode(code), p.generators)}});
    doc["relations"].push_back({{"component", {r.outputs, r.inputs}}, {"terms", terms}});
  }
  return doc.dump(2) + "\n";
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open presentation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

}  // namespace propkoszul
