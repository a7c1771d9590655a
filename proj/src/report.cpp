#include "propkoszul/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "propkoszul/enumerate.hpp"
#include "propkoszul/parallel.hpp"

namespace propkoszul {

namespace {

using nlohmann::ordered_json;

struct Key {
  int m, n, w;
};

std::vector<Key> keys_of(const TruncationParams& trunc, Component only) {
  std::vector<Key> keys;
  for (auto [m, n] : truncation_components(trunc, only))
    for (int w = 1; w <= trunc.max_weight; ++w) keys.push_back({m, n, w});
  return keys;
}

std::string list(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

std::string list(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string comp(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

std::string header(const std::string& what, const std::string& name, const TruncationParams& t) {
  return what + ": " + name + " (max weight " + std::to_string(t.max_weight) + ", max biarity " +
         std::to_string(t.max_biarity) + ")\n";
}

ordered_json trunc_json(const TruncationParams& t) {
  return {{"max_weight", t.max_weight}, {"max_biarity", t.max_biarity}};
}

ordered_json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"complex", w->complex}, {"component", {w->m, w->n}}, {"weight", w->weight},
          {"degree", w->degree},   {"dim", w->dim}};
}

std::string witness_text(const Witness& w) {
  return w.complex + " " + comp(w.m, w.n) + " weight " + std::to_string(w.weight) + " degree " +
         std::to_string(w.degree) + ": homology dim " + std::to_string(w.dim);
}

ordered_json slices_json(const std::vector<SliceHomology>& s) {
  ordered_json a = ordered_json::array();
  for (const auto& h : s)
    a.push_back({{"component", {h.m, h.n}}, {"weight", h.weight}, {"dims", h.dims}, {"homology", h.homology},
                 {"ok", h.ok}});
  return a;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::vector<DimsRow> dims_table(const QuadraticProp& p, const TruncationParams& trunc, Component only, int jobs) {
  auto keys = keys_of(trunc, only);
  return parallel_map<DimsRow>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    const auto& q = p.quotient(k.m, k.n, k.w);
    return DimsRow{k.m, k.n, k.w, q.ambient().size(), q.ideal_dim(), q.dim()};
  });
}

std::vector<DimsRow> free_table(const Presentation& p, const TruncationParams& trunc, Component only, int jobs) {
  auto keys = keys_of(trunc, only);
  return parallel_map<DimsRow>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    return DimsRow{k.m, k.n, k.w, enumerate_connected(p.generators, k.w, k.m, k.n).size(), 0, 0};
  });
}

std::vector<DualRow> dual_table(const QuadraticProp& p, const TruncationParams& trunc, Component only, int jobs) {
  auto keys = keys_of(trunc, only);
  return parallel_map<DualRow>(keys.size(), jobs, [&](std::size_t i) {
    const auto& k = keys[i];
    return DualRow{k.m, k.n, k.w, koszul_dual_component(p, k.m, k.n, k.w).dim()};
  });
}

std::string render_dims(const std::string& name, const TruncationParams& trunc, const std::vector<DimsRow>& rows,
                        Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "dims"}, {"presentation", name}, {"truncation", trunc_json(trunc)}};
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"component", {r.m, r.n}},
                           {"weight", r.weight},
                           {"free", r.free_dim},
                           {"ideal", r.ideal_dim},
                           {"quotient", r.quotient_dim}});
    return dump(j);
  }
  std::ostringstream os;
  os << header("quotient dims", name, trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << std::setw(8) << "free"
     << std::setw(8) << "ideal" << "quotient\n";
  for (const auto& r : rows)
    os << std::setw(11) << comp(r.m, r.n) << std::setw(8) << r.weight << std::setw(8) << r.free_dim << std::setw(8)
       << r.ideal_dim << r.quotient_dim << "\n";
  return os.str();
}

std::string render_free(const std::string& name, const TruncationParams& trunc, const std::vector<DimsRow>& rows,
                        Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "free"}, {"presentation", name}, {"truncation", trunc_json(trunc)}};
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) j["rows"].push_back({{"component", {r.m, r.n}}, {"weight", r.weight}, {"dim", r.free_dim}});
    return dump(j);
  }
  std::ostringstream os;
  os << header("free connected dims", name, trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << "dim\n";
  for (const auto& r : rows) os << std::setw(11) << comp(r.m, r.n) << std::setw(8) << r.weight << r.free_dim << "\n";
  return os.str();
}

std::string render_dual(const std::string& name, const TruncationParams& trunc, const std::vector<DualRow>& rows,
                        Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "dual"}, {"presentation", name}, {"truncation", trunc_json(trunc)}};
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) j["rows"].push_back({{"component", {r.m, r.n}}, {"weight", r.weight}, {"dim", r.dim}});
    return dump(j);
  }
  std::ostringstream os;
  os << header("Koszul dual dims", name, trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << "dim\n";
  for (const auto& r : rows) os << std::setw(11) << comp(r.m, r.n) << std::setw(8) << r.weight << r.dim << "\n";
  return os.str();
}

std::string render(const D2Report& r, Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "d2"}, {"presentation", r.presentation}, {"truncation", trunc_json(r.trunc)}};
    j["entries"] = ordered_json::array();
    for (const auto& e : r.entries) {
      ordered_json x{{"complex", e.complex}, {"component", {e.m, e.n}}, {"weight", e.weight}, {"ok", e.ok()}};
      if (e.failure) x["failure_degree"] = *e.failure;
      if (!e.error.empty()) x["error"] = e.error;
      j["entries"].push_back(x);
    }
    j["all_zero"] = r.all_zero();
    return dump(j);
  }
  std::ostringstream os;
  os << header("d^2 check", r.presentation, r.trunc);
  std::size_t bad = 0;
  for (const auto& e : r.entries) {
    if (e.ok()) continue;
    ++bad;
    os << "FAIL " << e.complex << " " << comp(e.m, e.n) << " weight " << e.weight;
    if (e.failure) os << ": d^2 != 0 at degree " << *e.failure;
    if (!e.error.empty()) os << ": " << e.error;
    os << "\n";
  }
  os << r.entries.size() << " complexes checked, " << bad << " failures\n";
  os << "d^2 = 0: " << (r.all_zero() ? "yes" : "no") << "\n";
  return os.str();
}

std::string render(const KoszulReport& r, Format f) {
  const std::string verdict = r.positive() ? "KOSZUL-UP-TO-TRUNCATION" : "NOT-KOSZUL";
  if (f == Format::kJson) {
    ordered_json j{{"report", "koszul"}, {"presentation", r.presentation}, {"truncation", trunc_json(r.trunc)}};
    j["koszul_complex"] = slices_json(r.koszul);
    j["mirrored_complex"] = slices_json(r.mirrored);
    j["bar"] = slices_json(r.bar);
    j["criteria"] = {{"koszul_acyclic", r.koszul_acyclic},
                     {"mirrored_acyclic", r.mirrored_acyclic},
                     {"bar_concentrated", r.bar_concentrated},
                     {"coherent", r.coherent()}};
    j["verdict"] = verdict;
    j["witness"] = witness_json(r.witness);
    return dump(j);
  }
  std::ostringstream os;
  os << header("Koszul check", r.presentation, r.trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << std::setw(16) << "P^¡⊠P H"
     << std::setw(16) << "P⊠P^¡ H" << "bar H\n";
  for (std::size_t i = 0; i < r.koszul.size(); ++i) {
    const auto& k = r.koszul[i];
    os << std::setw(11) << comp(k.m, k.n) << std::setw(8) << k.weight << std::setw(14) << list(k.homology)
       << std::setw(14) << list(r.mirrored[i].homology) << list(r.bar[i].homology) << "\n";
  }
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "Koszul complex P^¡⊠P acyclic: " << yn(r.koszul_acyclic) << "\n";
  os << "Koszul complex P⊠P^¡ acyclic: " << yn(r.mirrored_acyclic) << "\n";
  os << "bar homology concentrated in top degree: " << yn(r.bar_concentrated) << "\n";
  os << "criteria agree: " << yn(r.coherent()) << "\n";
  if (r.witness) os << "witness: " << witness_text(*r.witness) << "\n";
  os << "verdict: " << verdict << " (max weight " << r.trunc.max_weight << ", max biarity " << r.trunc.max_biarity
     << ")\n";
  return os.str();
}

std::string render(const BarCobarReport& r, Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "barcobar"}, {"presentation", r.presentation}, {"truncation", trunc_json(r.trunc)}};
    j["slices"] = slices_json(r.slices);
    for (std::size_t i = 0; i < r.slices.size(); ++i) j["slices"][i]["quotient_dim"] = r.quotient_dims[i];
    j["resolution"] = r.resolution;
    j["witness"] = witness_json(r.witness);
    return dump(j);
  }
  std::ostringstream os;
  os << header("cobar of the Koszul dual", r.presentation, r.trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << std::setw(8) << "dim P"
     << "cobar H\n";
  for (std::size_t i = 0; i < r.slices.size(); ++i) {
    const auto& s = r.slices[i];
    os << std::setw(11) << comp(s.m, s.n) << std::setw(8) << s.weight << std::setw(8) << r.quotient_dims[i]
       << list(s.homology) << "\n";
  }
  if (r.witness) os << "witness: " << witness_text(*r.witness) << "\n";
  os << "resolution of P: " << (r.resolution ? "yes" : "no") << "\n";
  return os.str();
}

std::string render(const AcyclicityReport& r, Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "augmented-bar"}, {"presentation", r.presentation}, {"truncation", trunc_json(r.trunc)}};
    j["slices"] = slices_json(r.slices);
    j["acyclic"] = r.acyclic;
    j["witness"] = witness_json(r.witness);
    return dump(j);
  }
  std::ostringstream os;
  os << header("augmented bar B(P)⊠P", r.presentation, r.trunc);
  os << std::left << std::setw(11) << "component" << std::setw(8) << "weight" << "homology\n";
  for (const auto& s : r.slices) os << std::setw(11) << comp(s.m, s.n) << std::setw(8) << s.weight << list(s.homology) << "\n";
  if (r.witness) os << "witness: " << witness_text(*r.witness) << "\n";
  os << "acyclic in positive weight: " << (r.acyclic ? "yes" : "no") << "\n";
  return os.str();
}

std::string render(const GebraReport& r, Format f) {
  if (f == Format::kJson) {
    ordered_json j{{"report", "gebra"}, {"presentation", r.presentation}};
    j["checks"] = ordered_json::array();
    for (const auto& e : r.entries) {
      ordered_json x{{"check", e.name}, {"pass", e.pass}};
      if (e.witness)
        x["witness"] = {{"out", e.witness->out}, {"in", e.witness->in}, {"value", format_rational(e.witness->value)}};
      j["checks"].push_back(x);
    }
    j["pass"] = r.pass();
    return dump(j);
  }
  std::ostringstream os;
  os << "gebra check: " << r.presentation << "\n";
  for (const auto& e : r.entries) {
    os << (e.pass ? "pass " : "FAIL ") << e.name;
    if (e.witness)
      os << ": entry out " << list(e.witness->out) << " in " << list(e.witness->in) << " = "
         << format_rational(e.witness->value);
    os << "\n";
  }
  os << "gebra: " << (r.pass() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace propkoszul
