#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tuned_source::cli {
namespace {

using nlohmann::json;

// Maps every value in a syntactically valid JSON document to the line it
// starts on, keyed by field path ("substrate.a", "sources[1].re").
class LineLocator {
 public:
  explicit LineLocator(std::string_view text) : s_(text) {
    skip_ws();
    if (pos_ < s_.size()) value("");
  }
  int line_of(const std::string& path) const {
    auto it = lines_.find(path);
    return it == lines_.end() ? 1 : it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }
  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }
  void value(const std::string& path) {
    skip_ws();
    lines_[path] = line_;
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      if (s_[pos_] == '}') {
        ++pos_;
        return;
      }
      while (true) {
        skip_ws();
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        value(path.empty() ? key : path + "." + key);
        skip_ws();
        if (s_[pos_++] != ',') return;
      }
    }
    if (c == '[') {
      ++pos_;
      skip_ws();
      if (s_[pos_] == ']') {
        ++pos_;
        return;
      }
      for (std::size_t i = 0;; ++i) {
        value(path + "[" + std::to_string(i) + "]");
        skip_ws();
        if (s_[pos_++] != ',') return;
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (pos_ < s_.size() && std::string_view(",]} \t\r\n").find(s_[pos_]) == std::string_view::npos) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

class Reader {
 public:
  Reader(const std::string& source, const LineLocator& lines) : source_(source), lines_(lines) {}

  [[noreturn]] void fail(const std::string& path, const std::string& reason) const {
    throw ConfigError(source_, lines_.line_of(path), path.empty() ? "<root>" : path, reason);
  }

  void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(child(path, key), "unknown field");
    }
  }

  const json& object(const json& parent, const std::string& path, const char* key) const {
    const std::string p = child(path, key);
    if (!parent.contains(key)) fail(p, "required field is missing");
    const json& v = parent.at(key);
    if (!v.is_object()) fail(p, "expected an object");
    return v;
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
  }

  double number(const json& parent, const std::string& path, const char* key) const {
    const std::string p = child(path, key);
    if (!parent.contains(key)) fail(p, "required field is missing");
    return number(parent.at(key), p);
  }

  std::optional<double> optional_number(const json& parent, const std::string& path, const char* key) const {
    if (!parent.contains(key)) return std::nullopt;
    return number(parent.at(key), child(path, key));
  }

  int integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto x = v.get<long long>();
    if (x < -1000000 || x > 1000000) fail(path, "integer out of range");
    return static_cast<int>(x);
  }

  int integer(const json& parent, const std::string& path, const char* key) const {
    const std::string p = child(path, key);
    if (!parent.contains(key)) fail(p, "required field is missing");
    return integer(parent.at(key), p);
  }

  std::vector<double> numbers(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], element(path, i)));
    return out;
  }

  bool boolean(const json& parent, const std::string& path, const char* key, bool fallback) const {
    if (!parent.contains(key)) return fallback;
    const json& v = parent.at(key);
    if (!v.is_boolean()) fail(child(path, key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const json& parent, const std::string& path, const char* key) const {
    const std::string p = child(path, key);
    if (!parent.contains(key)) fail(p, "required field is missing");
    const json& v = parent.at(key);
    if (!v.is_string()) fail(p, "expected a string");
    return v.get<std::string>();
  }

 private:
  const std::string& source_;
  const LineLocator& lines_;
};

bool chi_units_scaled(const Reader& r, const json& obj, const std::string& path) {
  if (!obj.contains("units")) return false;
  const std::string units = r.text(obj, path, "units");
  if (units == "absolute") return false;
  if (units == "scaled") return true;
  r.fail(child(path, "units"), "expected \"absolute\" or \"scaled\"");
}

void read_substrate(const Reader& r, const json& root, RunConfig& cfg) {
  const json& s = r.object(root, "", "substrate");
  r.allow_keys(s, "substrate", {"epsilon_r", "mu_r", "omega", "a", "eps0", "mu0"});
  auto& sub = cfg.substrate;
  sub.epsilon_r = r.number(s, "substrate", "epsilon_r");
  sub.mu_r = r.number(s, "substrate", "mu_r");
  sub.omega = r.number(s, "substrate", "omega");
  sub.a = r.number(s, "substrate", "a");
  sub.eps0 = r.optional_number(s, "substrate", "eps0").value_or(1.0);
  sub.mu0 = r.optional_number(s, "substrate", "mu0").value_or(1.0);
  if (!(sub.omega > 0.0)) r.fail("substrate.omega", "omega must be positive");
  if (!(sub.a > 0.0)) r.fail("substrate.a", "radius must be positive");
  if (!(sub.eps0 > 0.0)) r.fail("substrate.eps0", "eps0 must be positive");
  if (!(sub.mu0 > 0.0)) r.fail("substrate.mu0", "mu0 must be positive");
  try {
    sub.validate();
  } catch (const Error& e) {
    r.fail("substrate", e.what());
  }
}

void read_modes(const Reader& r, const json& root, RunConfig& cfg) {
  const json& m = r.object(root, "", "modes");
  r.allow_keys(m, "modes", {"j", "l"});
  if (!m.contains("j") || !m.at("j").is_array() || m.at("j").empty()) {
    r.fail("modes.j", "expected a non-empty array drawn from {1, 2}");
  }
  std::set<int> js;
  for (std::size_t i = 0; i < m.at("j").size(); ++i) {
    const int j = r.integer(m.at("j")[i], element("modes.j", i));
    if (j != 1 && j != 2) r.fail(element("modes.j", i), "multipole type must be 1 or 2");
    js.insert(j);
  }
  cfg.j_list.assign(js.begin(), js.end());
  if (!m.contains("l") || !m.at("l").is_array() || m.at("l").size() != 2) {
    r.fail("modes.l", "expected an inclusive range [lo, hi]");
  }
  cfg.l_lo = r.integer(m.at("l")[0], "modes.l[0]");
  cfg.l_hi = r.integer(m.at("l")[1], "modes.l[1]");
  if (cfg.l_lo < 1) r.fail("modes.l[0]", "order must be >= 1");
  if (cfg.l_hi < cfg.l_lo) r.fail("modes.l[1]", "upper order must be >= lower order");
  if (cfg.l_hi > 100) r.fail("modes.l[1]", "order must be <= 100");
}

void read_chi(const Reader& r, const json& root, RunConfig& cfg) {
  const json& c = r.object(root, "", "chi");
  r.allow_keys(c, "chi", {"lo", "hi", "n", "values", "units"});
  ChiGrid grid;
  grid.scaled = chi_units_scaled(r, c, "chi");
  if (c.contains("values")) {
    if (c.contains("lo") || c.contains("hi") || c.contains("n")) {
      r.fail("chi", "give either values or lo/hi/n, not both");
    }
    grid.values = r.numbers(c.at("values"), "chi.values");
    if (grid.values.empty()) r.fail("chi.values", "expected at least one value");
  } else {
    const double lo = r.number(c, "chi", "lo");
    const double hi = r.number(c, "chi", "hi");
    const int n = r.integer(c, "chi", "n");
    if (n < 1 || n > 100000) r.fail("chi.n", "grid size must be in [1, 100000]");
    if (hi < lo) r.fail("chi.hi", "hi must be >= lo");
    grid.values = linear_grid(lo, hi, n);
  }
  cfg.chi = std::move(grid);
}

void read_chi_search(const Reader& r, const json& root, RunConfig& cfg) {
  const json& c = r.object(root, "", "chi_search");
  r.allow_keys(c, "chi_search", {"interval", "grid_n", "tol", "table"});
  ChiSearch search;
  if (!c.contains("interval")) r.fail("chi_search.interval", "required field is missing");
  const auto interval = r.numbers(c.at("interval"), "chi_search.interval");
  if (interval.size() != 2 || !(interval[0] < interval[1])) {
    r.fail("chi_search.interval", "expected [lo, hi] with lo < hi");
  }
  search.lo = interval[0];
  search.hi = interval[1];
  if (c.contains("grid_n")) search.grid_n = r.integer(c.at("grid_n"), "chi_search.grid_n");
  if (search.grid_n < 2 || search.grid_n > 1000000) r.fail("chi_search.grid_n", "grid size must be in [2, 1000000]");
  if (auto tol = r.optional_number(c, "chi_search", "tol")) search.tol = *tol;
  if (!(search.tol > 0.0)) r.fail("chi_search.tol", "tolerance must be positive");
  if (!c.contains("table") || !c.at("table").is_array()) {
    r.fail("chi_search.table", "expected an array of [chi, g] pairs");
  }
  const json& table = c.at("table");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto pair = r.numbers(table[i], element("chi_search.table", i));
    if (pair.size() != 2) r.fail(element("chi_search.table", i), "expected a [chi, g] pair");
    if (!search.table_chi.empty() && !(pair[0] > search.table_chi.back())) {
      r.fail(element("chi_search.table", i), "chi values must be strictly increasing");
    }
    search.table_chi.push_back(pair[0]);
    search.table_g.push_back(pair[1]);
  }
  if (search.table_chi.size() < 2) r.fail("chi_search.table", "expected at least two samples");
  if (search.lo < search.table_chi.front() || search.hi > search.table_chi.back()) {
    r.fail("chi_search.interval", "interval must lie inside the tabulated chi range");
  }
  cfg.chi_search = std::move(search);
}

void read_sources(const Reader& r, const json& root, RunConfig& cfg) {
  const json& list = root.at("sources");
  if (!list.is_array()) r.fail("sources", "expected an array");
  std::set<model::Mode> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = element("sources", i);
    const json& s = list[i];
    if (!s.is_object()) r.fail(p, "expected an object");
    r.allow_keys(s, p, {"j", "l", "m", "re", "im"});
    const int j = r.integer(s, p, "j");
    const int l = r.integer(s, p, "l");
    const int m = s.contains("m") ? r.integer(s.at("m"), child(p, "m")) : 0;
    const double re = r.number(s, p, "re");
    const double im = r.optional_number(s, p, "im").value_or(0.0);
    try {
      model::Mode mode(j, l, m);
      if (!seen.insert(mode).second) r.fail(p, "duplicate mode");
      cfg.sources.push_back({mode, {re, im}});
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      r.fail(p, e.what());
    }
  }
}

void read_tolerances(const Reader& r, const json& root, RunConfig& cfg) {
  const json& t = r.object(root, "", "tolerances");
  r.allow_keys(t, "tolerances", {"quad_rel", "margin", "f1"});
  auto& tol = cfg.tolerances;
  if (auto v = r.optional_number(t, "tolerances", "quad_rel")) {
    if (*v < 1e-14 || *v > 1e-3) r.fail("tolerances.quad_rel", "quadrature tolerance must be in [1e-14, 1e-3]");
    tol.quad_rel = *v;
  }
  if (auto v = r.optional_number(t, "tolerances", "margin")) {
    if (!(*v >= 0.0)) r.fail("tolerances.margin", "margin tolerance must be non-negative");
    tol.margin = *v;
  }
  if (auto v = r.optional_number(t, "tolerances", "f1")) {
    if (!(*v > 0.0)) r.fail("tolerances.f1", "f1 tolerance must be positive");
    tol.f1 = *v;
  }
}

void read_sweep(const Reader& r, const json& root, RunConfig& cfg) {
  const json& s = r.object(root, "", "sweep");
  r.allow_keys(s, "sweep", {"axis", "values", "units", "hold_ka"});
  Sweep sweep;
  const std::string axis = r.text(s, "sweep", "axis");
  if (axis == "chi") {
    sweep.axis = SweepAxis::chi;
  } else if (axis == "k") {
    sweep.axis = SweepAxis::k;
  } else if (axis == "a") {
    sweep.axis = SweepAxis::a;
  } else if (axis == "l") {
    sweep.axis = SweepAxis::l;
  } else {
    r.fail("sweep.axis", "expected one of chi, k, a, l");
  }
  if (!s.contains("values")) r.fail("sweep.values", "required field is missing");
  sweep.values = r.numbers(s.at("values"), "sweep.values");
  if (sweep.values.empty()) r.fail("sweep.values", "expected at least one value");
  sweep.scaled = chi_units_scaled(r, s, "sweep");
  if (sweep.scaled && sweep.axis != SweepAxis::chi) r.fail("sweep.units", "units apply to the chi axis only");
  sweep.hold_ka = r.boolean(s, "sweep", "hold_ka", false);
  if (sweep.hold_ka && sweep.axis != SweepAxis::a) r.fail("sweep.hold_ka", "hold_ka applies to the a axis only");
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    const double v = sweep.values[i];
    const std::string p = element("sweep.values", i);
    if (sweep.axis == SweepAxis::k && v == 0.0) r.fail(p, "wavenumber must be nonzero");
    if (sweep.axis == SweepAxis::a && !(v > 0.0)) r.fail(p, "radius must be positive");
    if (sweep.axis == SweepAxis::l && (v != std::floor(v) || v < 1.0 || v > 100.0)) {
      r.fail(p, "order must be an integer in [1, 100]");
    }
  }
  cfg.sweep = std::move(sweep);
}

void read_output(const Reader& r, const json& root, RunConfig& cfg) {
  const json& o = r.object(root, "", "output");
  r.allow_keys(o, "output", {"format", "path"});
  if (o.contains("format")) {
    const std::string f = r.text(o, "output", "format");
    if (f == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::json;
    } else {
      r.fail("output.format", "expected \"csv\" or \"json\"");
    }
  }
  if (o.contains("path")) cfg.out_path = r.text(o, "output", "path");
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::chi: return "chi";
    case SweepAxis::k: return "k";
    case SweepAxis::a: return "a";
    case SweepAxis::l: return "l";
  }
  return "unknown";
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& path, const std::string& reason)
    : Error(ErrorCode::config, source + ":" + std::to_string(line) + ": " + path + ": " + reason) {}

std::vector<model::Mode> RunConfig::modes() const {
  std::vector<model::Mode> out;
  for (int j : j_list) {
    for (int l = l_lo; l <= l_hi; ++l) out.emplace_back(j, l);
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double d = n - 1;
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = (lo * (n - 1 - i) + hi * i) / d;
  return out;
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) line += text[i] == '\n';
    throw ConfigError(source, line, "<root>", std::string("malformed JSON: ") + e.what());
  }
  const LineLocator lines(text);
  const Reader r(source, lines);
  if (!root.is_object()) r.fail("", "expected a JSON object");
  r.allow_keys(root, "", {"substrate", "modes", "chi", "chi0", "chi_search", "sources", "tolerances", "sweep",
                          "output"});

  RunConfig cfg;
  cfg.source = source;
  read_substrate(r, root, cfg);
  if (root.contains("modes")) read_modes(r, root, cfg);
  if (root.contains("chi")) read_chi(r, root, cfg);
  if (root.contains("chi0")) cfg.chi0 = r.number(root.at("chi0"), "chi0");
  if (root.contains("chi_search")) read_chi_search(r, root, cfg);
  if (root.contains("sources")) read_sources(r, root, cfg);
  if (root.contains("tolerances")) read_tolerances(r, root, cfg);
  if (root.contains("sweep")) read_sweep(r, root, cfg);
  if (root.contains("output")) read_output(r, root, cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "<file>", "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace tuned_source::cli
