#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tuned_source/error.hpp"
#include "tuned_source/model.hpp"

namespace tuned_source::cli {

enum class OutputFormat { csv, json };
enum class SweepAxis { chi, k, a, l };

std::string_view to_string(SweepAxis axis) noexcept;

/// Chi values either in absolute units or scaled as s = chi * mu_omega / k^2.
struct ChiGrid {
  std::vector<double> values;
  bool scaled = false;
};

struct ChiSearch {
  double lo = 0.0;
  double hi = 0.0;
  int grid_n = 64;
  double tol = 1e-12;
  std::vector<double> table_chi;
  std::vector<double> table_g;
};

struct SourceEntry {
  model::Mode mode;
  std::complex<double> amplitude;
};

struct Tolerances {
  double quad_rel = 1e-13;
  double margin = 1e-9;
  double f1 = 1e-8;
};

struct Sweep {
  SweepAxis axis = SweepAxis::chi;
  std::vector<double> values;
  bool scaled = false;   // chi axis only
  bool hold_ka = false;  // a axis only
};

struct RunConfig {
  std::string source;
  model::Substrate substrate;
  std::vector<int> j_list;
  int l_lo = 0;
  int l_hi = -1;
  std::optional<ChiGrid> chi;
  std::optional<double> chi0;
  std::optional<ChiSearch> chi_search;
  std::vector<SourceEntry> sources;
  Tolerances tolerances;
  std::optional<Sweep> sweep;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> out_path;

  std::vector<model::Mode> modes() const;
};

/// Thrown for malformed or invalid configuration. The message has the form
/// "<source>:<line>: <field path>: <reason>".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& path, const std::string& reason);
};

RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Evenly spaced grid with exact endpoints and exact mirror symmetry when lo = -hi.
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace tuned_source::cli
