#include "commands.hpp"

#include <cmath>
#include <optional>

#include "parallel.hpp"
#include "tuned_source/error.hpp"
#include "tuned_source/model.hpp"
#include "tuned_source/theorems.hpp"
#include "tuned_source/tuning.hpp"

namespace tuned_source::cli {
namespace {

using model::Mode;

[[noreturn]] void missing(const RunConfig& cfg, const char* field, const char* command) {
  throw ConfigError(cfg.source, 1, field, std::string("required by ") + command);
}

quadrature::QuadratureOptions integral_options(const RunConfig& cfg) {
  auto opts = model::default_integral_options();
  opts.rel_tol = cfg.tolerances.quad_rel;
  return opts;
}

double to_absolute(double chi, bool scaled, double k, double mu_omega) {
  return scaled ? chi * k * k / mu_omega : chi;
}

std::string error_status(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
  return "error";
}

Flag flag(bool ok) { return ok ? Flag::pass : Flag::fail; }

struct Chi0 {
  std::optional<double> value;  // absolute units
  std::string note;
};

// chi0 from an explicit value, the constraint table, or the default 0.
Chi0 resolve_chi0(const RunConfig& cfg, bool scaled, double k, double mu_omega) {
  if (cfg.chi0 && cfg.chi_search) {
    throw ConfigError(cfg.source, 1, "chi0", "give either chi0 or chi_search, not both");
  }
  if (cfg.chi0) {
    const double v = to_absolute(*cfg.chi0, scaled, k, mu_omega);
    return {v, "chi0=" + format_number(v) + " (configured)"};
  }
  if (cfg.chi_search) {
    const auto& s = *cfg.chi_search;
    const tuning::TabulatedConstraint g(s.table_chi, s.table_g);
    const auto xi = tuning::find_constraint_roots(g, s.lo, s.hi, s.grid_n, s.tol,
                                                  tuning::Admissibility{k, mu_omega});
    try {
      const double v = tuning::select_chi0(xi);
      return {v, "chi0=" + format_number(v) + " (constraint search)"};
    } catch (const Error& e) {
      return {std::nullopt, std::string("chi0=none (") + std::string(to_string(e.code())) + ")"};
    }
  }
  return {0.0, "chi0=0 (default)"};
}

std::vector<std::string> substrate_notes(const RunConfig& cfg) {
  const auto& s = cfg.substrate;
  return {"medium=" + std::string(model::to_string(model::classify_substrate(s))),
          "k=" + format_number(s.wavenumber()), "mu_omega=" + format_number(s.mu_omega()),
          "a=" + format_number(s.a)};
}

struct ModeSummary {
  double f0 = NAN;
  double f1_residual = NAN;
  std::optional<double> f2_closed;
  double f2_fd = NAN;
  Flag f1_pass = Flag::fail;
  std::string status = "ok";
};

ModeSummary summarize_mode(const Mode& mode, double k, double a, double mu_omega, const RunConfig& cfg) {
  ModeSummary out;
  try {
    const auto fd = theorems::expansion_finite_difference(mode, k, a, mu_omega);
    out.f2_fd = fd.f2;
    if (mode.j() == 1) {
      const auto opts = integral_options(cfg);
      const auto c = theorems::appendix_coeffs(mode.l(), k, a, mu_omega, opts);
      out.f0 = c.c0 / (c.d0 * c.d0);
      const auto check = theorems::f1_vanishing_check(mode.l(), k, a, mu_omega, cfg.tolerances.f1, opts);
      out.f1_residual = check.residual;
      out.f1_pass = flag(check.pass);
    } else {
      const auto closed = theorems::expansion_j2(mode.l(), k, a, mu_omega);
      out.f0 = closed.f0;
      out.f2_closed = closed.f2;
      out.f1_residual = std::abs(fd.f1) / closed.f0;
      out.f1_pass = flag(out.f1_residual <= cfg.tolerances.f1);
    }
  } catch (const std::exception& e) {
    out.status = error_status(e);
    out.f1_pass = Flag::fail;
  }
  return out;
}

}  // namespace

RunResult run_verify(const RunConfig& cfg, int jobs) {
  if (cfg.j_list.empty()) missing(cfg, "modes", "verify");
  if (!cfg.chi) missing(cfg, "chi", "verify");
  const double k = cfg.substrate.wavenumber();
  const double mu_omega = cfg.substrate.mu_omega();
  const double a = cfg.substrate.a;
  const bool scaled = cfg.chi->scaled;
  const Chi0 chi0 = resolve_chi0(cfg, scaled, k, mu_omega);
  const auto modes = cfg.modes();
  const auto& chis = cfg.chi->values;
  const auto opts = integral_options(cfg);

  const auto summaries = ordered_map<ModeSummary>(
      modes.size(), jobs, [&](std::size_t i) { return summarize_mode(modes[i], k, a, mu_omega, cfg); });

  RunResult result;
  auto& report = result.report;
  report.command = "verify";
  report.notes = substrate_notes(cfg);
  report.notes.push_back(chi0.note);
  report.columns = {"j",      "l",       "k",
                    "K",      "chi",     "N_k",
                    "N_K",    "M",       "boundedness_margin",
                    "minimality_margin", "f0", "f1_residual",
                    "f2_closed", "f2_fd", "boundedness_pass",
                    "minimality_pass", "f1_pass", "status"};

  const std::size_t cells = modes.size() * chis.size();
  report.rows = ordered_map<std::vector<Cell>>(cells, jobs, [&](std::size_t idx) {
    const Mode& mode = modes[idx / chis.size()];
    const ModeSummary& ms = summaries[idx / chis.size()];
    const double chi = to_absolute(chis[idx % chis.size()], scaled, k, mu_omega);
    std::vector<Cell> row{static_cast<long long>(mode.j()), static_cast<long long>(mode.l()), k};
    const Cell f2_closed = ms.f2_closed ? Cell{*ms.f2_closed} : Cell{};
    try {
      const auto t = model::tuned_wavenumber(k, mu_omega, chi);
      const auto ints = model::radial_integrals(mode, k, t.K, a, opts);
      const auto bound = theorems::boundedness_margin(mode, k, chi, mu_omega, a, opts);
      const Flag bound_pass = flag(bound.margin >= -cfg.tolerances.margin * bound.scale);
      Cell min_margin;
      Flag min_pass = Flag::na;
      if (chi0.value) {
        const auto m = theorems::minimality_margin(mode, k, chi, *chi0.value, mu_omega, a, opts);
        min_margin = m.margin;
        const bool asserted = chi * chi > *chi0.value * *chi0.value &&
                              theorems::in_expansion_regime(k, chi, mu_omega) &&
                              theorems::in_expansion_regime(k, *chi0.value, mu_omega);
        if (asserted) min_pass = flag(m.margin > theorems::kStrictMarginThreshold * m.scale);
      }
      row.insert(row.end(), {t.K, chi, ints.n_self_k, ints.n_self_K, ints.m_cross, bound.margin, min_margin,
                             ms.f0, ms.f1_residual, f2_closed, ms.f2_fd, bound_pass, min_pass, ms.f1_pass,
                             ms.status});
    } catch (const std::exception& e) {
      row.insert(row.end(), {Cell{}, chi, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, ms.f0, ms.f1_residual, f2_closed,
                             ms.f2_fd, Flag::fail, Flag::fail, ms.f1_pass, error_status(e)});
    }
    return row;
  });

  for (const auto& row : report.rows) {
    const bool row_ok = std::get<std::string>(row.back()) == "ok";
    bool flags_ok = true;
    for (std::size_t c = 14; c <= 16; ++c) flags_ok = flags_ok && std::get<Flag>(row[c]) != Flag::fail;
    if (!row_ok || !flags_ok) result.exit_code = kExitViolation;
  }
  return result;
}

RunResult run_energies(const RunConfig& cfg, int jobs) {
  if (!cfg.chi && !cfg.chi_search) missing(cfg, "chi", "energies (or chi_search)");
  const double k = cfg.substrate.wavenumber();
  const double mu_omega = cfg.substrate.mu_omega();
  const double a = cfg.substrate.a;
  const auto opts = integral_options(cfg);

  model::SourceSpec spec;
  for (const auto& s : cfg.sources) spec.amplitudes[s.mode] = s.amplitude;

  auto energy_at = [&](double K) {
    model::Coefficients coeffs;
    for (const auto& [mode, amp] : spec.amplitudes) coeffs[mode] = model::mode_coefficient(mode, k, K, a, opts);
    return model::source_energy(spec, coeffs);
  };

  RunResult result;
  auto& report = result.report;
  report.command = "energies";
  report.notes = substrate_notes(cfg);
  report.columns = {"kind", "chi", "K", "E_untuned", "E_tuned", "delta", "pass", "status"};

  const double e_untuned = energy_at(std::abs(k));
  auto energy_row = [&](const std::string& kind, double chi) -> std::vector<Cell> {
    try {
      const auto t = model::tuned_wavenumber(k, mu_omega, chi);
      const double e_tuned = energy_at(t.K);
      const double delta = e_tuned - e_untuned;
      return {kind, chi, t.K, e_untuned, e_tuned, delta, flag(delta >= -cfg.tolerances.margin * e_untuned),
              std::string("ok")};
    } catch (const std::exception& e) {
      return {kind, chi, Cell{}, e_untuned, Cell{}, Cell{}, Flag::fail, error_status(e)};
    }
  };

  std::vector<double> chis;
  if (cfg.chi) {
    for (double c : cfg.chi->values) chis.push_back(to_absolute(c, cfg.chi->scaled, k, mu_omega));
  }
  report.rows = ordered_map<std::vector<Cell>>(chis.size(), jobs,
                                               [&](std::size_t i) { return energy_row("grid", chis[i]); });
  if (cfg.chi_search || cfg.chi0) {
    const Chi0 chi0 = resolve_chi0(cfg, cfg.chi && cfg.chi->scaled, k, mu_omega);
    report.notes.push_back(chi0.note);
    if (chi0.value) {
      report.rows.push_back(energy_row("chi0", *chi0.value));
    } else {
      report.rows.push_back({std::string("chi0"), Cell{}, Cell{}, e_untuned, Cell{}, Cell{}, Flag::na,
                             std::string(to_string(ErrorCode::no_tuned_solution))});
    }
  }

  for (const auto& row : report.rows) {
    const auto& status = std::get<std::string>(row.back());
    if (std::get<Flag>(row[6]) == Flag::fail || (status != "ok" && status != "no-tuned-solution")) {
      result.exit_code = kExitViolation;
    }
  }
  return result;
}

RunResult run_sweep(const RunConfig& cfg, int jobs) {
  if (cfg.j_list.empty()) missing(cfg, "modes", "sweep");
  if (!cfg.sweep) missing(cfg, "sweep", "sweep");
  const auto& sweep = *cfg.sweep;
  if (sweep.axis != SweepAxis::chi && !cfg.chi) missing(cfg, "chi", "sweep over k, a or l");
  if (cfg.chi_search) throw ConfigError(cfg.source, 1, "chi_search", "not supported by sweep; give chi0");

  const double k_base = cfg.substrate.wavenumber();
  const double mu_omega = cfg.substrate.mu_omega();
  const double a_base = cfg.substrate.a;
  const auto opts = integral_options(cfg);

  struct Cellspec {
    double value;
    Mode mode;
    double chi_in;
  };
  const bool chi_axis = sweep.axis == SweepAxis::chi;
  const bool scaled = chi_axis ? sweep.scaled : cfg.chi->scaled;
  std::vector<Cellspec> cells;
  for (double v : sweep.values) {
    std::vector<Mode> modes;
    if (sweep.axis == SweepAxis::l) {
      for (int j : cfg.j_list) modes.emplace_back(j, static_cast<int>(v));
    } else {
      modes = cfg.modes();
    }
    for (const auto& mode : modes) {
      if (chi_axis) {
        cells.push_back({v, mode, v});
      } else {
        for (double c : cfg.chi->values) cells.push_back({v, mode, c});
      }
    }
  }

  RunResult result;
  auto& report = result.report;
  report.command = "sweep";
  report.notes = substrate_notes(cfg);
  report.notes.push_back("axis=" + std::string(to_string(sweep.axis)) + (sweep.hold_ka ? " hold_ka=1" : ""));
  report.columns = {"axis", "value", "j", "l", "k", "a", "K", "chi", "ka", "Ka", "boundedness_margin",
                    "boundedness_relative", "minimality_margin", "minimality_relative", "status"};

  report.rows = ordered_map<std::vector<Cell>>(cells.size(), jobs, [&](std::size_t i) {
    const auto& c = cells[i];
    double k = k_base, a = a_base;
    if (sweep.axis == SweepAxis::k) k = c.value;
    if (sweep.axis == SweepAxis::a) {
      a = c.value;
      if (sweep.hold_ka) k = k_base * a_base / c.value;
    }
    const double chi = to_absolute(c.chi_in, scaled, k, mu_omega);
    const double chi0 = to_absolute(cfg.chi0.value_or(0.0), scaled, k, mu_omega);
    std::vector<Cell> row{std::string(to_string(sweep.axis)), c.value, static_cast<long long>(c.mode.j()),
                          static_cast<long long>(c.mode.l()), k, a};
    try {
      const auto t = model::tuned_wavenumber(k, mu_omega, chi);
      const auto b = theorems::boundedness_margin(c.mode, k, chi, mu_omega, a, opts);
      const auto m = theorems::minimality_margin(c.mode, k, chi, chi0, mu_omega, a, opts);
      row.insert(row.end(), {t.K, chi, k * a, t.K * a, b.margin, b.relative(), m.margin, m.relative(),
                             std::string("ok")});
    } catch (const std::exception& e) {
      row.insert(row.end(), {Cell{}, chi, k * a, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, error_status(e)});
    }
    return row;
  });

  for (const auto& row : report.rows) {
    if (std::get<std::string>(row.back()) != "ok") result.exit_code = kExitViolation;
  }
  return result;
}

RunResult run_tune(const RunConfig& cfg, int /*jobs*/) {
  if (!cfg.chi_search) missing(cfg, "chi_search", "tune");
  const double k = cfg.substrate.wavenumber();
  const double mu_omega = cfg.substrate.mu_omega();
  const auto& s = *cfg.chi_search;
  const tuning::TabulatedConstraint g(s.table_chi, s.table_g);
  const auto xi = tuning::find_constraint_roots(g, s.lo, s.hi, s.grid_n, s.tol, tuning::Admissibility{k, mu_omega});

  RunResult result;
  auto& report = result.report;
  report.command = "tune";
  report.notes = substrate_notes(cfg);
  report.notes.push_back("bracket_tol=" + format_number(xi.bracket_tol));
  report.columns = {"kind", "chi", "K", "g", "status"};
  for (double r : xi.roots) {
    report.rows.push_back({std::string("root"), r, model::tuned_wavenumber(k, mu_omega, r).K, g(r),
                           std::string("ok")});
  }
  for (double r : xi.excluded) {
    report.rows.push_back({std::string("excluded"), r, Cell{}, g(r),
                           std::string(to_string(ErrorCode::evanescent_regime))});
  }
  try {
    const double chi0 = tuning::select_chi0(xi);
    report.rows.push_back({std::string("chi0"), chi0, model::tuned_wavenumber(k, mu_omega, chi0).K, g(chi0),
                           std::string("ok")});
  } catch (const Error& e) {
    report.rows.push_back({std::string("chi0"), Cell{}, Cell{}, Cell{}, std::string(to_string(e.code()))});
  }
  return result;
}

}  // namespace tuned_source::cli
