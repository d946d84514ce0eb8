#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string_view>

#include "tuned_source/quadrature.hpp"

namespace tuned_source::model {

enum class MediumClass { ordinary, dps_metamaterial, dng_metamaterial };

std::string_view to_string(MediumClass medium) noexcept;

/// Lossless spherical substrate of radius a. Units are scaled so that the
/// vacuum constants default to eps0 = mu0 = 1, giving k0 = omega.
struct Substrate {
  double epsilon_r = 1.0;
  double mu_r = 1.0;
  double omega = 1.0;
  double a = 1.0;
  double eps0 = 1.0;
  double mu0 = 1.0;

  /// Throws unsupported_medium / invalid_input if the substrate is outside
  /// the eps_r mu_r > 0, a > 0, omega > 0 domain.
  void validate() const;

  double k0() const;
  /// Signed propagation constant sign(eps_r) omega sqrt(eps mu); negative
  /// for double-negative media.
  double wavenumber() const;
  /// mu omega, signed (negative permeability gives a negative product).
  double mu_omega() const;
};

/// Multipole channel (j, l, m): j in {1, 2}, l >= 1, |m| <= l.
class Mode {
 public:
  Mode(int j, int l, int m = 0);

  int j() const noexcept { return j_; }
  int l() const noexcept { return l_; }
  int m() const noexcept { return m_; }

  auto operator<=>(const Mode&) const = default;

 private:
  int j_;
  int l_;
  int m_;
};

/// Lagrange multiplier chi with its tuned wavenumber K = sqrt(k^2 - chi mu omega).
struct TuningState {
  double chi = 0.0;
  double K = 0.0;
  double mu_omega = 0.0;
};

/// Self integrals N_j(k), N_j(K) and the cross integral M_j(k, K).
struct RadialIntegrals {
  double n_self_k = 0.0;
  double n_self_K = 0.0;
  double m_cross = 0.0;
};

/// Prescribed multipole moments a_{l,m}^{(j)}.
struct SourceSpec {
  std::map<Mode, std::complex<double>> amplitudes;
};

using Coefficients = std::map<Mode, double>;

/// Default accuracy for the radial integrals.
quadrature::QuadratureOptions default_integral_options();

MediumClass classify_substrate(const Substrate& s);

TuningState tuned_wavenumber(double k, double mu_omega, double chi);

/// M_j(k, K):
///   j = 2: int_0^a j_l(kr) j_l(Kr) r^2 dr
///   j = 1: int_0^a [j_l(kr) j_l(Kr) + k K r^2 u_l(kr) u_l(Kr) / (l(l+1))] dr
double cross_integral(int j, int l, double k, double K, double a,
                      const quadrature::QuadratureOptions& options = default_integral_options());

/// N_j(alpha) = M_j(alpha, alpha). Closed form (Lommel) for j = 2.
double self_integral(int j, int l, double alpha, double a,
                     const quadrature::QuadratureOptions& options = default_integral_options());

RadialIntegrals radial_integrals(const Mode& mode, double k, double K, double a,
                                 const quadrature::QuadratureOptions& options = default_integral_options());

/// R = N_j(K) / M_j(k, K)^2 (unit per-mode normalization). Depends on
/// (j, l, k, K, a) only.
double mode_coefficient(const Mode& mode, double k, double K, double a,
                        const quadrature::QuadratureOptions& options = default_integral_options());

double mode_coefficient(const Mode& mode, const Substrate& s, const TuningState& t,
                        const quadrature::QuadratureOptions& options = default_integral_options());

/// sum R |a|^2 over the modes of the spec.
double source_energy(const SourceSpec& spec, const Coefficients& coefficients);

}  // namespace tuned_source::model
