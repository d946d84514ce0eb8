#include "tuned_source/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tuned_source/error.hpp"
#include "tuned_source/specfun.hpp"

namespace tuned_source::model {

namespace {

void require_nonzero_wavenumber(double k, const char* name) {
  if (!std::isfinite(k) || k == 0.0) {
    throw Error(ErrorCode::invalid_input, std::string(name) + " must be finite and nonzero");
  }
}

void require_radius(double a) {
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw Error(ErrorCode::invalid_input, "radius must be positive");
  }
}

void require_multipole(int j, int l) {
  if (j != 1 && j != 2) {
    throw Error(ErrorCode::invalid_input, "multipole type j must be 1 or 2, got " + std::to_string(j));
  }
  if (l < 1) {
    throw Error(ErrorCode::invalid_input, "multipole order l must be >= 1, got " + std::to_string(l));
  }
}

quadrature::QuadratureOptions tuned_for(double k, double K,
                                        quadrature::QuadratureOptions options) {
  options.wavenumber = std::max({std::abs(k), std::abs(K), options.wavenumber});
  return options;
}

}  // namespace

std::string_view to_string(MediumClass medium) noexcept {
  switch (medium) {
    case MediumClass::ordinary:
      return "ordinary";
    case MediumClass::dps_metamaterial:
      return "DPS-metamaterial";
    case MediumClass::dng_metamaterial:
      return "DNG-metamaterial";
  }
  return "unknown";
}

void Substrate::validate() const {
  const bool finite = std::isfinite(epsilon_r) && std::isfinite(mu_r) && std::isfinite(omega) &&
                      std::isfinite(a) && std::isfinite(eps0) && std::isfinite(mu0);
  if (!finite) throw Error(ErrorCode::invalid_input, "substrate parameters must be finite");
  if (!(omega > 0.0)) throw Error(ErrorCode::invalid_input, "omega must be positive");
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_input, "radius a must be positive");
  if (!(eps0 > 0.0) || !(mu0 > 0.0)) {
    throw Error(ErrorCode::invalid_input, "vacuum constants must be positive");
  }
  if (!(epsilon_r * mu_r > 0.0)) {
    throw Error(ErrorCode::unsupported_medium,
                "unsupported medium: the theorems require epsilon_r * mu_r > 0 (got epsilon_r = " +
                    std::to_string(epsilon_r) + ", mu_r = " + std::to_string(mu_r) + ")");
  }
}

double Substrate::k0() const { return omega * std::sqrt(eps0 * mu0); }

double Substrate::wavenumber() const {
  validate();
  const double magnitude = omega * std::sqrt(epsilon_r * eps0 * mu_r * mu0);
  return epsilon_r < 0.0 ? -magnitude : magnitude;
}

double Substrate::mu_omega() const { return mu_r * mu0 * omega; }

Mode::Mode(int j, int l, int m) : j_(j), l_(l), m_(m) {
  require_multipole(j, l);
  if (m < -l || m > l) {
    throw Error(ErrorCode::invalid_input, "azimuthal index must satisfy |m| <= l");
  }
}

quadrature::QuadratureOptions default_integral_options() {
  quadrature::QuadratureOptions options;
  options.rel_tol = 1e-13;
  options.abs_tol = 1e-300;
  return options;
}

MediumClass classify_substrate(const Substrate& s) {
  const double k = s.wavenumber();
  if (k == 0.0) {
    throw Error(ErrorCode::unsupported_medium, "nihility medium (k = 0) is not supported");
  }
  if (k < 0.0) return MediumClass::dng_metamaterial;
  // k == k0 counts as ordinary.
  return k >= s.k0() ? MediumClass::ordinary : MediumClass::dps_metamaterial;
}

TuningState tuned_wavenumber(double k, double mu_omega, double chi) {
  require_nonzero_wavenumber(k, "k");
  if (!std::isfinite(mu_omega) || !std::isfinite(chi)) {
    throw Error(ErrorCode::invalid_input, "chi and mu*omega must be finite");
  }
  const double K2 = k * k - chi * mu_omega;
  if (!(K2 > 0.0)) {
    throw Error(ErrorCode::evanescent_regime,
                "evanescent regime: K^2 = k^2 - chi*mu*omega = " + std::to_string(K2) +
                    " must be positive");
  }
  return {chi, std::sqrt(K2), mu_omega};
}

double cross_integral(int j, int l, double k, double K, double a,
                      const quadrature::QuadratureOptions& options) {
  require_multipole(j, l);
  require_nonzero_wavenumber(k, "k");
  require_nonzero_wavenumber(K, "K");
  require_radius(a);
  const auto opts = tuned_for(k, K, options);
  if (j == 2) {
    auto f = [&](double r) {
      return specfun::bessel_j(l, k * r) * specfun::bessel_j(l, K * r) * r * r;
    };
    return quadrature::integrate_radial(f, a, opts).value;
  }
  const double ll1 = static_cast<double>(l) * (l + 1);
  auto f = [&](double r) {
    const auto jk = specfun::bessel_j_neighbors(l, k * r);
    const auto jK = specfun::bessel_j_neighbors(l, K * r);
    return jk.value * jK.value +
           k * K * r * r * specfun::bessel_u(l, jk) * specfun::bessel_u(l, jK) / ll1;
  };
  return quadrature::integrate_radial(f, a, opts).value;
}

double self_integral(int j, int l, double alpha, double a,
                     const quadrature::QuadratureOptions& options) {
  require_multipole(j, l);
  if (j == 2) return specfun::lommel_first(l, alpha, a);
  return cross_integral(j, l, alpha, alpha, a, options);
}

RadialIntegrals radial_integrals(const Mode& mode, double k, double K, double a,
                                 const quadrature::QuadratureOptions& options) {
  RadialIntegrals out;
  out.n_self_k = self_integral(mode.j(), mode.l(), k, a, options);
  out.n_self_K = self_integral(mode.j(), mode.l(), K, a, options);
  out.m_cross = cross_integral(mode.j(), mode.l(), k, K, a, options);
  return out;
}

double mode_coefficient(const Mode& mode, double k, double K, double a,
                        const quadrature::QuadratureOptions& options) {
  const auto in = radial_integrals(mode, k, K, a, options);
  if (std::abs(in.m_cross) <= 1e-12 * std::sqrt(in.n_self_k * in.n_self_K)) {
    throw Error(ErrorCode::degenerate_mode,
                "cross integral vanishes for mode (j=" + std::to_string(mode.j()) +
                    ", l=" + std::to_string(mode.l()) + "); coefficient undefined");
  }
  return in.n_self_K / (in.m_cross * in.m_cross);
}

double mode_coefficient(const Mode& mode, const Substrate& s, const TuningState& t,
                        const quadrature::QuadratureOptions& options) {
  return mode_coefficient(mode, s.wavenumber(), t.K, s.a, options);
}

double source_energy(const SourceSpec& spec, const Coefficients& coefficients) {
  double energy = 0.0;
  for (const auto& [mode, amplitude] : spec.amplitudes) {
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
      throw Error(ErrorCode::invalid_input, "source amplitudes must be finite");
    }
    const auto it = coefficients.find(mode);
    if (it == coefficients.end()) {
      throw Error(ErrorCode::incomplete_spec,
                  "no coefficient for mode (j=" + std::to_string(mode.j()) +
                      ", l=" + std::to_string(mode.l()) + ", m=" + std::to_string(mode.m()) + ")");
    }
    energy += it->second * std::norm(amplitude);
  }
  return energy;
}

}  // namespace tuned_source::model
