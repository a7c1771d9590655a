// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals the list given by
// --known-failures (default: none). Known failures are still printed as FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "propkoszul/gebra.hpp"
#include "propkoszul/koszul.hpp"
#include "propkoszul/presets.hpp"

using namespace propkoszul;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<std::string> kClassical{"bilie",      "bilie0",     "infbi",           "lie-operad",
                                          "ass-operad", "com-operad", "nilpotent-algebra"};

std::string component(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

Outcome d2_suites() {
  std::size_t complexes = 0;
  for (const auto& name : kClassical) {
    D2Report r = d2_check(QuadraticProp(load_preset(name)), {3, 6});
    complexes += r.entries.size();
    for (const auto& e : r.entries)
      if (!e.ok())
        return {false, name + " " + e.complex + " " + component(e.m, e.n) + " weight " + std::to_string(e.weight) +
                           (e.error.empty() ? "" : ": " + e.error)};
  }
  return {true, std::to_string(complexes) + " complexes, 7 presets, m+n <= 6, weight <= 3"};
}

Outcome classical_dims() {
  std::ostringstream bad;
  QuadraticProp lie(load_preset("lie-operad")), com(load_preset("com-operad")), ass(load_preset("ass-operad")),
      nil(load_preset("nilpotent-algebra"));
  const std::size_t lie_want[] = {1, 1, 2, 6}, ass_want[] = {1, 2, 6, 24};
  for (int n = 1; n <= 4; ++n) {
    std::size_t l = lie.quotient(1, n, n - 1).dim(), c = com.quotient(1, n, n - 1).dim(),
                a = ass.quotient(1, n, n - 1).dim();
    if (l != lie_want[n - 1] || l != oracle::binary_operad_dim(n, oracle::Flavor::Lie)) bad << " lie n=" << n;
    if (c != 1 || c != oracle::binary_operad_dim(n, oracle::Flavor::Com)) bad << " com n=" << n;
    if (a != ass_want[n - 1] || a != oracle::binary_operad_dim(n, oracle::Flavor::Ass)) bad << " ass n=" << n;
  }
  const std::vector<oracle::AlgebraRelation> x_squared{{{{0, 0}, 1}}};
  auto quotient = oracle::algebra_dims(1, x_squared, 6);
  auto dual = oracle::algebra_dims(1, oracle::orthogonal(1, x_squared), 6);
  for (int w = 1; w <= 4; ++w)
    if (nil.quotient(1, 1, w).dim() != (w == 1 ? 1u : 0u) || nil.quotient(1, 1, w).dim() != quotient[w])
      bad << " nilpotent w=" << w;
  for (int w = 1; w <= 6; ++w)
    if (koszul_dual_component(nil, 1, 1, w).dim() != 1 || dual[w] != 1) bad << " nilpotent dual w=" << w;
  if (!bad.str().empty()) return {false, "mismatch:" + bad.str()};
  return {true, "lie 1,1,2,6; com 1,1,1,1; ass 1,2,6,24; nilpotent 1,0,0,0, dual 1 up to weight 6"};
}

Outcome syzygy() {
  std::size_t checked = 0;
  for (const auto& name : preset_names()) {
    QuadraticProp p(load_preset(name));
    for (auto [m, n] : truncation_components({2, 6})) {
      ++checked;
      std::size_t d = koszul_dual_component(p, m, n, 2).dim(), r = p.relation_dim(m, n);
      if (d != r)
        return {false, name + " " + component(m, n) + ": dual " + std::to_string(d) + ", relations " +
                           std::to_string(r)};
    }
  }
  return {true, std::to_string(checked) + " (preset, component) pairs"};
}

Outcome koszul_presets() {
  std::string detail;
  for (const char* name : {"bilie", "bilie0", "infbi"}) {
    KoszulReport r = koszul_check(QuadraticProp(load_preset(name)), {3, 6});
    if (!r.positive())
      return {false, std::string(name) + " negative" +
                         (r.witness ? " at " + r.witness->complex + " " + component(r.witness->m, r.witness->n) +
                                          " weight " + std::to_string(r.witness->weight)
                                    : "")};
  }
  return {true, "bilie, bilie0, infbi positive at max weight 3, max biarity 6"};
}

Outcome coherence() {
  std::vector<std::pair<std::string, Presentation>> tested;
  for (const auto& name : preset_names()) tested.emplace_back(name, load_preset(name));
  tested.emplace_back("non-koszul-algebra",
                      load_presentation_file(std::string(TEST_DATA_DIR) + "/non-koszul-algebra.json"));
  std::string split, fixture;
  bool nocompat_negative = false;
  for (const auto& [name, pres] : tested) {
    TruncationParams trunc = name == "non-koszul-algebra" ? TruncationParams{5, 2} : TruncationParams{3, 6};
    KoszulReport r = koszul_check(QuadraticProp(pres), trunc);
    if (!r.coherent()) split += " " + name;
    if (name == "bilie-nocompat") nocompat_negative = !r.positive() && r.witness && r.witness->dim > 0;
    if (name == "non-koszul-algebra" && !r.positive() && r.witness)
      fixture = "non-koszul-algebra negative with witness " + r.witness->complex + " weight " +
                std::to_string(r.witness->weight);
  }
  std::string detail = split.empty() ? "verdicts agree on all " + std::to_string(tested.size()) + " presentations"
                                     : "split verdicts:" + split;
  if (!fixture.empty()) detail += "; " + fixture;
  if (!nocompat_negative) detail += "; bilie-nocompat is KOSZUL-UP-TO-TRUNCATION, required negative";
  return {split.empty() && nocompat_negative, detail};
}

Outcome augmented_bar() {
  for (const char* name : {"bilie", "ass-operad"}) {
    AcyclicityReport r = augmented_bar_acyclicity(QuadraticProp(load_preset(name)), {3, 5});
    if (!r.acyclic)
      return {false, std::string(name) + " homology at " + component(r.witness->m, r.witness->n) + " weight " +
                         std::to_string(r.witness->weight)};
  }
  return {true, "bilie and ass-operad acyclic, m+n <= 5, weight <= 3"};
}

Outcome bar_cobar() {
  struct Case {
    const char* name;
    TruncationParams trunc;
  };
  for (auto [name, trunc] : {Case{"nilpotent-algebra", {6, 2}}, Case{"bilie", {3, 4}}}) {
    QuadraticProp p(load_preset(name));
    BarCobarReport r = bar_cobar_check(p, trunc);
    bool dims_ok = true;
    for (const auto& s : r.slices) {
      std::size_t positive = 0;
      for (std::size_t d = 1; d < s.homology.size(); ++d) positive += s.homology[d];
      dims_ok = dims_ok && positive == 0 && s.homology.front() == p.quotient(s.m, s.n, s.weight).dim();
    }
    if (!r.resolution || !dims_ok) return {false, std::string(name) + " is not resolved"};
  }
  return {true, "nilpotent-algebra up to weight 6, bilie m+n <= 4, weight <= 3"};
}

Outcome gebras() {
  Presentation p = load_preset("bilie");
  GebraStructure good = load_gebra_file(std::string(TEST_DATA_DIR) + "/bilie-2d.json", p);
  GebraStructure bad = load_gebra_file(std::string(TEST_DATA_DIR) + "/bilie-2d-perturbed.json", p);
  GebraReport g = gebra_check(p, good), b = gebra_check(p, bad);
  if (!g.pass()) return {false, "the 2-dimensional Lie bialgebra is rejected"};
  if (b.pass()) return {false, "the perturbation passes"};
  std::string witness;
  for (const auto& e : b.entries)
    if (!e.pass && e.witness && witness.empty()) witness = e.name;
  if (witness.empty()) return {false, "the perturbation fails without a witness"};
  std::mt19937 rng(20240601);
  for (int t = 0; t < 5; ++t) {
    RationalMatrix m;
    do m = RationalMatrix::from_dense(oracle::random_matrix(rng, 2, 2, -3, 3));
    while (!inverse(m));
    if (!gebra_check(p, base_change(good, p, m)).pass() || gebra_check(p, base_change(bad, p, m)).pass())
      return {false, "verdict changed under base change " + std::to_string(t + 1)};
  }
  return {true, "structure passes, perturbation fails (" + witness + "), 5 base changes agree"};
}

Outcome determinism() {
  auto a = oracle::run_cli("koszul --preset bilie");
  auto b = oracle::run_cli("koszul --preset bilie");
  auto c = oracle::run_cli("koszul --preset bilie", "PROPKOSZUL_JOBS=64");
  auto d = oracle::run_cli("koszul --preset bilie --format json --jobs 64");
  auto e = oracle::run_cli("koszul --preset bilie --format json --jobs 1");
  if (a.exit_code != 0 || a.out.empty()) return {false, "koszul --preset bilie exited " + std::to_string(a.exit_code)};
  if (a.out != b.out || a.out != c.out || d.out != e.out) return {false, "reports differ between runs"};
  return {true, "byte-identical text and JSON reports, 1 and 64 workers"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-failures") {
      std::stringstream ss(argv[i + 1]);
      for (std::string tok; std::getline(ss, tok, ',');) known.insert(std::stoi(tok));
    }

  const std::vector<std::function<Outcome()>> criteria{d2_suites, classical_dims, syzygy,    koszul_presets, coherence,
                                                       augmented_bar, bar_cobar,  gebras, determinism};
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int id = static_cast<int>(i) + 1;
    if (!o.pass) failed.insert(id);
    std::printf("criterion %d: %s  %s  [%.1fs]%s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                !o.pass && known.count(id) ? "  (known failure)" : "");
    std::fflush(stdout);
  }
  if (failed != known) {
    std::printf("failing criteria differ from the known-failure list\n");
    return 1;
  }
  return 0;
}
