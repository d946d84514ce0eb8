#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace tuned_source::tuning {

/// Roots of the tuning constraint on a searched interval.
struct ChiSet {
  std::vector<double> roots;     // strictly increasing
  double bracket_tol = 0.0;
  std::vector<double> excluded;  // roots with chi * mu_omega >= k^2
};

/// Roots are admissible only while K^2 = k^2 - chi mu_omega stays positive.
struct Admissibility {
  double k = 0.0;
  double mu_omega = 0.0;

  bool admits(double chi) const { return chi * mu_omega < k * k; }
};

using Constraint = std::function<double(double)>;

/// Samples g on grid_n equispaced points of [lo, hi], bisects every sign
/// change down to width <= tol and keeps grid points where g vanishes
/// exactly or touches zero (|g| <= tol at a local minimum of |g|).
ChiSet find_constraint_roots(const Constraint& g, double lo, double hi, int grid_n, double tol,
                             std::optional<Admissibility> admissibility = std::nullopt);

/// Element of minimal |chi|; on a tie (within bracket_tol) the positive one.
double select_chi0(const ChiSet& xi);

/// Piecewise-linear interpolant of tabulated (chi, g) pairs. Evaluating
/// outside the tabulated range is a constraint-evaluation error.
class TabulatedConstraint {
 public:
  TabulatedConstraint(std::vector<double> chi, std::vector<double> g);

  double operator()(double chi) const;

  double lo() const { return chi_.front(); }
  double hi() const { return chi_.back(); }

 private:
  std::vector<double> chi_;
  std::vector<double> g_;
};

}  // namespace tuned_source::tuning
