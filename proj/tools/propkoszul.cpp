// propkoszul: batch front end for the PROP Koszul-duality engine.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict,
// 2 usage, input or file errors.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "propkoszul/gebra.hpp"
#include "propkoszul/koszul.hpp"
#include "propkoszul/parallel.hpp"
#include "propkoszul/presets.hpp"
#include "propkoszul/report.hpp"

namespace pk = propkoszul;

namespace {

struct RunConfig {
  std::string preset;
  std::string file;
  int max_weight = 3;
  int max_biarity = 6;
  std::string component;
  std::string format = "text";
  int jobs = 0;
  std::string structure;
};

pk::Component parse_component(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--component", "expected m,n");
  try {
    std::size_t a = 0, b = 0;
    int m = std::stoi(text.substr(0, comma), &a);
    int n = std::stoi(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1 || m < 1 || n < 1) throw std::invalid_argument(text);
    return std::make_pair(m, n);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--component", "expected two positive integers m,n");
  }
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  auto* preset = sub->add_option("--preset", cfg.preset, "preset presentation name");
  auto* file = sub->add_option("--file", cfg.file, "presentation JSON file")->check(CLI::ExistingFile);
  preset->excludes(file);
  file->excludes(preset);
  sub->add_option("--max-weight", cfg.max_weight, "largest weight computed")->check(CLI::PositiveNumber);
  sub->add_option("--max-biarity", cfg.max_biarity, "largest m + n computed")->check(CLI::Range(2, 64));
  sub->add_option("--component", cfg.component, "restrict to one component m,n");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--jobs", cfg.jobs, "worker threads (PROPKOSZUL_JOBS overrides)")->check(CLI::NonNegativeNumber);
}

pk::Presentation load(const RunConfig& cfg) {
  if (cfg.preset.empty() == cfg.file.empty()) throw CLI::ValidationError("exactly one of --preset and --file is required");
  return cfg.preset.empty() ? pk::load_presentation_file(cfg.file) : pk::load_preset(cfg.preset);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul duality computations for quadratic PROPs at finite truncation"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string names;
  for (const auto& n : pk::preset_names()) names += (names.empty() ? "" : ", ") + n;

  auto* dims = app.add_subcommand("dims", "quotient dims per (m, n, weight)");
  auto* free = app.add_subcommand("free", "free PROP dims (connected graphs)");
  auto* dual = app.add_subcommand("dual", "Koszul dual dims");
  auto* d2 = app.add_subcommand("d2", "verify d^2 = 0 on bar, cobar and Koszul complexes");
  auto* koszul = app.add_subcommand("koszul", "Koszul criterion report");
  auto* barcobar = app.add_subcommand("barcobar", "cobar of the Koszul dual resolves P");
  auto* augbar = app.add_subcommand("augbar", "acyclicity of the augmented bar construction");
  auto* gebra = app.add_subcommand("gebra", "check a gebra structure against the relations");
  for (auto* s : {dims, free, dual, d2, koszul, barcobar, augbar, gebra}) add_common(s, cfg);
  gebra->add_option("--structure", cfg.structure, "gebra structure JSON file")->required()->check(CLI::ExistingFile);
  app.footer("presets: " + names);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto only = parse_component(cfg.component);
    const pk::Presentation pres = load(cfg);
    const pk::TruncationParams trunc{cfg.max_weight, cfg.max_biarity};
    const pk::Format fmt = cfg.format == "json" ? pk::Format::kJson : pk::Format::kText;
    const int jobs = pk::resolve_jobs(cfg.jobs);

    if (free->parsed()) {
      std::cout << pk::render_free(pres.name, trunc, pk::free_table(pres, trunc, only, jobs), fmt);
      return 0;
    }
    if (gebra->parsed()) {
      auto rep = pk::gebra_check(pres, pk::load_gebra_file(cfg.structure, pres));
      std::cout << pk::render(rep, fmt);
      return rep.pass() ? 0 : 1;
    }

    const pk::QuadraticProp p(pres);
    if (dims->parsed()) {
      std::cout << pk::render_dims(pres.name, trunc, pk::dims_table(p, trunc, only, jobs), fmt);
      return 0;
    }
    if (dual->parsed()) {
      std::cout << pk::render_dual(pres.name, trunc, pk::dual_table(p, trunc, only, jobs), fmt);
      return 0;
    }
    if (d2->parsed()) {
      auto rep = pk::d2_check(p, trunc, only, jobs);
      std::cout << pk::render(rep, fmt);
      return rep.all_zero() ? 0 : 1;
    }
    if (koszul->parsed()) {
      auto rep = pk::koszul_check(p, trunc, only, jobs);
      std::cout << pk::render(rep, fmt);
      return rep.positive() ? 0 : 1;
    }
    if (barcobar->parsed()) {
      auto rep = pk::bar_cobar_check(p, trunc, only, jobs);
      std::cout << pk::render(rep, fmt);
      return rep.resolution ? 0 : 1;
    }
    auto rep = pk::augmented_bar_acyclicity(p, trunc, only, jobs);
    std::cout << pk::render(rep, fmt);
    return rep.acyclic ? 0 : 1;
  } catch (const CLI::Error& e) {
    std::cerr << "propkoszul: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "propkoszul: " << e.what() << "\n";
    return 2;
  }
}
