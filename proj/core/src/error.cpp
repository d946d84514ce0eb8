#include "tuned_source/error.hpp"

namespace tuned_source {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::integrand_domain: return "integrand-domain";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::unsupported_medium: return "unsupported-medium";
    case ErrorCode::evanescent_regime: return "evanescent-regime";
    case ErrorCode::degenerate_mode: return "degenerate-mode";
    case ErrorCode::incomplete_spec: return "incomplete-spec";
    case ErrorCode::constraint_evaluation: return "constraint-evaluation";
    case ErrorCode::no_tuned_solution: return "no-tuned-solution";
    case ErrorCode::ill_conditioned_expansion: return "ill-conditioned-expansion";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

}  // namespace tuned_source
