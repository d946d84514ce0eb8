#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tuned_source::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
    std::string operator()(Flag f) const { return f == Flag::pass ? "1" : f == Flag::fail ? "0" : ""; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double x) const {
      if (std::isfinite(x)) return x;
      return format_number(x);
    }
    nlohmann::ordered_json operator()(long long x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(Flag f) const {
      if (f == Flag::na) return nullptr;
      return f == Flag::pass;
    }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_csv(const Report& report) {
  std::string out = std::string("# ") + kReportVersion + "\n";
  out += "# command=" + report.command + "\n";
  for (const auto& note : report.notes) out += "# " + note + "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out += (i ? "," : "") + csv_field(report.columns[i]);
  }
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["version"] = kReportVersion;
  doc["command"] = report.command;
  doc["notes"] = report.notes;
  doc["columns"] = report.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

void write_report_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move report into " + path + ": " + ec.message());
  }
}

}  // namespace tuned_source::cli
