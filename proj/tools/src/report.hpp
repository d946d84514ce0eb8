#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace tuned_source::cli {

/// Tri-state assertion flag. `na` marks rows where the assertion does not apply.
enum class Flag { fail, pass, na };

using Cell = std::variant<std::monostate, double, long long, std::string, Flag>;

struct Report {
  std::string command;
  std::vector<std::string> notes;  // extra "# key=value" lines after the version line
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline constexpr const char* kReportVersion = "tuned-source v1";

/// 17 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Writes to a sibling temporary file and renames it into place, so a failed
/// run never leaves a partial report. Throws std::runtime_error on I/O failure.
void write_report_file(const std::string& path, const std::string& content);

}  // namespace tuned_source::cli
