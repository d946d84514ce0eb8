#pragma once

#include <functional>

namespace tuned_source::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels_used = 0;
};

struct QuadratureOptions {
  /// Target relative accuracy, accepted range [1e-14, 1e-3].
  double rel_tol = 1e-12;
  /// Absolute floor on the acceptance threshold.
  double abs_tol = 1e-15;
  /// Highest wavenumber in the integrand. Initial panels are no wider than
  /// pi / max(wavenumber, 1).
  double wavenumber = 1.0;
  int max_panels = 50000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) integration of f over [lo, hi].
/// The panel with the largest |K21 - G10| is bisected until the summed
/// estimate falls below max(rel_tol |value|, abs_tol); panels whose
/// estimate is already at the rounding level of their own |f| mass are
/// retired instead of split.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureOptions& options = {});

/// int_0^a f(r) dr.
QuadratureResult integrate_radial(const Integrand& f, double a,
                                  const QuadratureOptions& options = {});

/// Truncation int_0^L f(r) dr of an extended integral int_0^inf f(r) dr.
QuadratureResult integrate_extended(const Integrand& f, double tail_cut,
                                    const QuadratureOptions& options = {});

/// Non-adaptive composite Gauss-Legendre (21 points per panel) on `panels`
/// equal panels of [lo, hi]. Smooth in any parameter of f, which is what
/// finite differences of integrals need.
double integrate_fixed(const Integrand& f, double lo, double hi, int panels);

}  // namespace tuned_source::quadrature
