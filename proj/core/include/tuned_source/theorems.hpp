#pragma once

#include <string_view>

#include "tuned_source/model.hpp"
#include "tuned_source/quadrature.hpp"

namespace tuned_source::theorems {

enum class MarginKind { boundedness, minimality };

std::string_view to_string(MarginKind kind) noexcept;

/// Signed slack of an energy inequality for one mode.
///   boundedness: N(k) N(K) - M(k, K)^2, scale N(k) N(K)
///   minimality:  ratio(chi) - ratio(chi0), scale ratio(chi0)
/// where ratio(chi) = N(K) / M(k, K)^2 and K = K(chi).
struct MarginReport {
  model::Mode mode;
  double chi = 0.0;
  double margin = 0.0;
  MarginKind kind = MarginKind::boundedness;
  double scale = 1.0;

  double relative() const { return margin / scale; }
};

enum class ExpansionMethod { closed_form, finite_difference };

/// ratio(chi) = f0 + f1 chi + f2 chi^2 + O(chi^3).
struct ExpansionCoeffs {
  int j = 2;
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  ExpansionMethod method = ExpansionMethod::closed_form;
};

/// Radial integrals C0, C1, D0, D1 of the j = 1 expansion (numerator and
/// denominator coefficients of chi^0 and chi^1).
struct AppendixCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
};

struct F1Check {
  bool pass = false;
  double residual = 0.0;
};

/// |chi mu omega| <= 0.1 k^2, where only lowest-order claims are asserted.
bool in_expansion_regime(double k, double chi, double mu_omega);

/// Threshold on margin / scale for strict minimality (uniqueness).
inline constexpr double kStrictMarginThreshold = 1e-12;

/// N_j(K) / M_j(k, K)^2 at K = sqrt(k^2 - chi mu omega).
double tuned_ratio(const model::Mode& mode, double k, double chi, double mu_omega, double a,
                   const quadrature::QuadratureOptions& options = model::default_integral_options());

MarginReport boundedness_margin(const model::Mode& mode, double k, double chi, double mu_omega,
                                double a,
                                const quadrature::QuadratureOptions& options = model::default_integral_options());

/// Relative discrepancy between the angular-reduced curl inner product
///   int_0^a [l^2(l+1)^2 j_l(kr) j_l(Kr) + l(l+1) (r j_l(kr))' (r j_l(Kr))'] dr
/// and (l(l+1))^2 M_1(k, K), normalized by (l(l+1))^2 sqrt(N_1(k) N_1(K)).
/// The radial derivative is taken as (l+1) j_l(x) - x j_{l+1}(x), independently
/// of the u_l kernel used by M_1.
double curl_identity_check(int l, double k, double K, double a,
                           const quadrature::QuadratureOptions& options = model::default_integral_options());

MarginReport minimality_margin(const model::Mode& mode, double k, double chi, double chi0,
                               double mu_omega, double a,
                               const quadrature::QuadratureOptions& options = model::default_integral_options());

/// Closed-form j = 2 coefficients: f0 = 2 / (a^3 [j_l^2 - j_{l-1} j_{l+1}](ka)),
/// f1 = 0, and the closed-form f2 with the 6 a^5 k^6 [...]^3 denominator.
/// That f2 tracks the true second coefficient only at leading order in
/// large ka; expansion_finite_difference gives the coefficient itself.
ExpansionCoeffs expansion_j2(int l, double k, double a, double mu_omega);

/// f0, f1, f2 of ratio(chi) by central differences with two Richardson
/// levels: h in {1e-2, 5e-3, 2.5e-3} k^2 / |mu omega| for f0 and f1,
/// ten times wider for f2.
ExpansionCoeffs expansion_finite_difference(const model::Mode& mode, double k, double a,
                                            double mu_omega);

AppendixCoeffs appendix_coeffs(int l, double k, double a, double mu_omega,
                               const quadrature::QuadratureOptions& options = model::default_integral_options());

/// residual = |C1 D0 - 2 C0 D1| / |D0|^3 divided by f0 = C0 / D0^2.
F1Check f1_vanishing_check(int l, double k, double a, double mu_omega, double tol,
                           const quadrature::QuadratureOptions& options = model::default_integral_options());

}  // namespace tuned_source::theorems
