#pragma once

#include "config.hpp"
#include "report.hpp"

namespace tuned_source::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

struct RunResult {
  Report report;
  int exit_code = kExitPass;
};

/// Theorem verification: one row per (mode, chi) cell.
RunResult run_verify(const RunConfig& config, int jobs = 1);
/// Untuned and tuned source energies per chi, plus the selected chi0 when a
/// constraint table is configured.
RunResult run_energies(const RunConfig& config, int jobs = 1);
/// Long-format margins over one swept axis (chi, k, a or l).
RunResult run_sweep(const RunConfig& config, int jobs = 1);
/// Roots of the tabulated tuning constraint and the selected chi0.
RunResult run_tune(const RunConfig& config, int jobs = 1);

}  // namespace tuned_source::cli
