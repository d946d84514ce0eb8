#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tuned_source {

enum class ErrorCode {
  invalid_input,
  singularity,
  integrand_domain,
  convergence,
  unsupported_medium,
  evanescent_regime,
  degenerate_mode,
  incomplete_spec,
  constraint_evaluation,
  no_tuned_solution,
  ill_conditioned_expansion,
  config,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code lets
/// front-ends map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when adaptive quadrature exhausts its panel budget. Carries the
/// best estimate reached so callers can decide whether it is usable.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double abs_error_estimate)
      : Error(ErrorCode::convergence, what),
        best_estimate_(best_estimate),
        abs_error_estimate_(abs_error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double abs_error_estimate() const noexcept { return abs_error_estimate_; }

 private:
  double best_estimate_;
  double abs_error_estimate_;
};

}  // namespace tuned_source
