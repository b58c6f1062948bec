#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "textcat/evaluation.hpp"

namespace textcat {

// Human-readable report: aligned metric table in the style of the result
// tables (Data set | N. of Features | Precision | Sensitivity | F-measure |
// Accuracy), followed by the confusion matrix, per-class breakdown, warnings
// and the resolved config. Deterministic content only (no timing).
void write_report_txt(const EvalReport& report, std::ostream& os);

// Machine-readable key<TAB>value / table lines.
void write_report_tsv(const EvalReport& report, std::ostream& os);

// Writes the file atomically: complete or absent, never truncated.
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

std::string render_report_txt(const EvalReport& report);
std::string render_report_tsv(const EvalReport& report);

// Percentage with two decimals, as in the published tables.
std::string format_pct(double v);
std::string format_pct(const std::optional<double>& v);

}  // namespace textcat
