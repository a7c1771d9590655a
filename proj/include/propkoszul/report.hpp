#pragma once

// Dimension tables and text / JSON rendering of every report.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propkoszul/gebra.hpp"
#include "propkoszul/koszul.hpp"

namespace propkoszul {

enum class Format { kText, kJson };

struct DimsRow {
  int m = 0, n = 0, weight = 0;
  std::size_t free_dim = 0, ideal_dim = 0, quotient_dim = 0;
};

struct DualRow {
  int m = 0, n = 0, weight = 0;
  std::size_t dim = 0;
};

using Component = std::optional<std::pair<int, int>>;

std::vector<DimsRow> dims_table(const QuadraticProp& p, const TruncationParams& trunc, Component only, int jobs);
/// Free-PROP rows carry the connected dims only (ideal and quotient columns stay 0).
std::vector<DimsRow> free_table(const Presentation& p, const TruncationParams& trunc, Component only, int jobs);
std::vector<DualRow> dual_table(const QuadraticProp& p, const TruncationParams& trunc, Component only, int jobs);

std::string render_dims(const std::string& name, const TruncationParams& trunc, const std::vector<DimsRow>& rows,
                        Format f);
std::string render_free(const std::string& name, const TruncationParams& trunc, const std::vector<DimsRow>& rows,
                        Format f);
std::string render_dual(const std::string& name, const TruncationParams& trunc, const std::vector<DualRow>& rows,
                        Format f);
std::string render(const D2Report& r, Format f);
std::string render(const KoszulReport& r, Format f);
std::string render(const BarCobarReport& r, Format f);
std::string render(const AcyclicityReport& r, Format f);
std::string render(const GebraReport& r, Format f);

}  // namespace propkoszul
