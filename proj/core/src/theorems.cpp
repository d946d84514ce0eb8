#include "tuned_source/theorems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tuned_source/error.hpp"
#include "tuned_source/specfun.hpp"

namespace tuned_source::theorems {

namespace {

void require_order(int l) {
  if (l < 1) throw Error(ErrorCode::invalid_input, "multipole order l must be >= 1");
}

void require_wavenumber(double k) {
  if (!std::isfinite(k) || k == 0.0) {
    throw Error(ErrorCode::invalid_input, "k must be finite and nonzero");
  }
}

quadrature::QuadratureOptions with_wavenumber(quadrature::QuadratureOptions options, double k) {
  options.wavenumber = std::max(options.wavenumber, std::abs(k));
  return options;
}

// Two Richardson levels for a sequence D(h), D(h/2), D(h/4) whose error
// expands in even powers of h.
double richardson(const std::array<double, 3>& d) {
  const double r1 = (4.0 * d[1] - d[0]) / 3.0;
  const double r2 = (4.0 * d[2] - d[1]) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace

std::string_view to_string(MarginKind kind) noexcept {
  return kind == MarginKind::boundedness ? "boundedness" : "minimality";
}

bool in_expansion_regime(double k, double chi, double mu_omega) {
  return std::abs(chi * mu_omega) <= 0.1 * k * k;
}

double tuned_ratio(const model::Mode& mode, double k, double chi, double mu_omega, double a,
                   const quadrature::QuadratureOptions& options) {
  const auto t = model::tuned_wavenumber(k, mu_omega, chi);
  const double n = model::self_integral(mode.j(), mode.l(), t.K, a, options);
  const double m = model::cross_integral(mode.j(), mode.l(), k, t.K, a, options);
  if (std::abs(m) <= 1e-12 * std::sqrt(n * model::self_integral(mode.j(), mode.l(), k, a, options))) {
    throw Error(ErrorCode::degenerate_mode,
                "cross integral vanishes at chi = " + std::to_string(chi));
  }
  return n / (m * m);
}

MarginReport boundedness_margin(const model::Mode& mode, double k, double chi, double mu_omega,
                                double a, const quadrature::QuadratureOptions& options) {
  const auto t = model::tuned_wavenumber(k, mu_omega, chi);
  const auto in = model::radial_integrals(mode, k, t.K, a, options);
  MarginReport report{mode, chi, 0.0, MarginKind::boundedness, 1.0};
  report.scale = in.n_self_k * in.n_self_K;
  report.margin = report.scale - in.m_cross * in.m_cross;
  return report;
}

double curl_identity_check(int l, double k, double K, double a,
                           const quadrature::QuadratureOptions& options) {
  require_order(l);
  require_wavenumber(k);
  require_wavenumber(K);
  const double ll1 = static_cast<double>(l) * (l + 1);
  auto radial_derivative = [l](double x, double jl, double jl1) { return (l + 1) * jl - x * jl1; };
  auto curl_product = [&](double r) {
    const auto jk = specfun::bessel_j_neighbors(l, k * r);
    const auto jK = specfun::bessel_j_neighbors(l, K * r);
    return ll1 * ll1 * jk.value * jK.value +
           ll1 * radial_derivative(k * r, jk.value, jk.above) *
               radial_derivative(K * r, jK.value, jK.above);
  };
  auto opts = options;
  opts.wavenumber = std::max({opts.wavenumber, std::abs(k), std::abs(K)});
  const double curl = quadrature::integrate_radial(curl_product, a, opts).value;
  const double cross = model::cross_integral(1, l, k, K, a, options);
  const double norm = std::sqrt(model::self_integral(1, l, k, a, options) *
                                model::self_integral(1, l, K, a, options));
  return std::abs(curl - ll1 * ll1 * cross) / (ll1 * ll1 * norm);
}

MarginReport minimality_margin(const model::Mode& mode, double k, double chi, double chi0,
                               double mu_omega, double a,
                               const quadrature::QuadratureOptions& options) {
  const double at_chi = tuned_ratio(mode, k, chi, mu_omega, a, options);
  const double at_chi0 = chi == chi0 ? at_chi : tuned_ratio(mode, k, chi0, mu_omega, a, options);
  return {mode, chi, at_chi - at_chi0, MarginKind::minimality, at_chi0};
}

ExpansionCoeffs expansion_j2(int l, double k, double a, double mu_omega) {
  require_order(l);
  require_wavenumber(k);
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_input, "radius must be positive");
  const double x = k * a;
  const auto j = specfun::bessel_j_neighbors(l, x);
  const double jm = j.below;
  const double j0 = j.value;
  const double jp = j.above;
  const double lommel = j0 * j0 - jm * jp;
  if (!(lommel > 0.0)) {
    throw Error(ErrorCode::ill_conditioned_expansion,
                "j_l^2 - j_{l-1} j_{l+1} is not positive at ka = " + std::to_string(x));
  }
  const double L = l;
  const double a2k2 = a * a * k * k;
  const double numerator =
      mu_omega * mu_omega *
      (a2k2 * std::pow(jm, 4) * (a2k2 - L * L + 1.0) +
       4.0 * a * k * (L - 1.0) * j0 * std::pow(jm, 3) * (-a2k2 + L * L + L) +
       4.0 * a * k * std::pow(j0, 3) * jm * (L * (L * (L + 2.0) - 2.0) - a2k2 * (L - 1.0)) +
       a2k2 * std::pow(j0, 4) * (a2k2 - L * (L + 4.0)) +
       2.0 * j0 * j0 * jm * jm *
           (a2k2 * a2k2 + a2k2 * ((L - 6.0) * L + 2.0) - 2.0 * std::pow(L, 4) + 2.0 * L * L));
  const double denominator = 6.0 * std::pow(a, 5) * std::pow(k, 6) * std::pow(lommel, 3);

  ExpansionCoeffs out;
  out.j = 2;
  out.f0 = 2.0 / (a * a * a * lommel);
  out.f1 = 0.0;
  out.f2 = numerator / denominator;
  out.method = ExpansionMethod::closed_form;
  return out;
}

ExpansionCoeffs expansion_finite_difference(const model::Mode& mode, double k, double a,
                                            double mu_omega) {
  require_wavenumber(k);
  if (!std::isfinite(mu_omega) || mu_omega == 0.0) {
    throw Error(ErrorCode::invalid_input, "mu*omega must be finite and nonzero");
  }
  auto opts = model::default_integral_options();
  opts.rel_tol = 1e-14;
  auto ratio = [&](double chi) { return tuned_ratio(mode, k, chi, mu_omega, a, opts); };

  const double base = k * k / std::abs(mu_omega);
  const double r0 = ratio(0.0);
  // f0 and f1 from narrow steps. The second difference divides quadrature
  // noise by h^2, so f2 uses a wider family.
  const std::array<double, 3> narrow = {1e-2 * base, 5e-3 * base, 2.5e-3 * base};
  const std::array<double, 3> wide = {1e-1 * base, 5e-2 * base, 2.5e-2 * base};
  std::array<double, 3> even{}, odd{}, second{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double h = narrow[i];
    const double plus = ratio(h);
    const double minus = ratio(-h);
    even[i] = 0.5 * (plus + minus);
    odd[i] = (plus - minus) / (2.0 * h);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double h = wide[i];
    second[i] = (ratio(h) + ratio(-h) - 2.0 * r0) / (2.0 * h * h);
  }
  ExpansionCoeffs out;
  out.j = mode.j();
  out.f0 = richardson(even);
  out.f1 = richardson(odd);
  out.f2 = richardson(second);
  out.method = ExpansionMethod::finite_difference;
  return out;
}

AppendixCoeffs appendix_coeffs(int l, double k, double a, double mu_omega,
                               const quadrature::QuadratureOptions& options) {
  require_order(l);
  require_wavenumber(k);
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_input, "radius must be positive");
  const double L = l;
  const double K = std::abs(k);
  const double k2 = k * k;
  const auto opts = with_wavenumber(options, k);

  auto c0 = [&](double r) {
    const auto j = specfun::bessel_j_neighbors(l, r * K);
    return (k2 * (L + 1) * (L + 1) * r * r * j.below * j.below -
            2.0 * k2 * L * (L + 1) * r * r * j.below * j.above +
            L * (k2 * L * r * r * j.above * j.above + (L + 1) * (2 * L + 1) * (2 * L + 1) * j.value * j.value)) /
           (L * (L + 1) * (2 * L + 1) * (2 * L + 1));
  };
  auto c1 = [&](double r) {
    const auto j = specfun::bessel_j_neighbors(l, r * K);
    return -1.0 / (L * (L + 1) * K * K) *
           (mu_omega * j.value *
            ((L + 1) * (-k2 * r * r + 2 * L * L + L) * j.value +
             r * K * (k2 * r * r - 2 * L * L - 2 * L) * j.above));
  };
  auto d0 = [&](double r) {
    const auto js = specfun::bessel_j_neighbors(l, k * r);
    const double jabs = specfun::bessel_j(l, r * K);
    const double bracket = (L + 1) * js.below - L * js.above;
    return r * r * std::pow(k, 2 - l) * std::pow(K, l) * bracket * bracket /
               (L * (L + 1) * (2 * L + 1) * (2 * L + 1)) +
           js.value * jabs;
  };
  auto d1 = [&](double r) {
    const auto js = specfun::bessel_j_neighbors(l, k * r);
    return -1.0 / (2.0 * L * (L + 1)) *
           (mu_omega * std::pow(k, -l - 2) * std::pow(K, l) * js.value *
            ((L + 1) * (-k2 * r * r + 2 * L * L + L) * js.value +
             k * r * (k2 * r * r - 2 * L * L - 2 * L) * js.above));
  };
  AppendixCoeffs out;
  out.c0 = quadrature::integrate_radial(c0, a, opts).value;
  out.c1 = quadrature::integrate_radial(c1, a, opts).value;
  out.d0 = quadrature::integrate_radial(d0, a, opts).value;
  out.d1 = quadrature::integrate_radial(d1, a, opts).value;
  return out;
}

F1Check f1_vanishing_check(int l, double k, double a, double mu_omega, double tol,
                           const quadrature::QuadratureOptions& options) {
  const auto c = appendix_coeffs(l, k, a, mu_omega, options);
  if (c.d0 == 0.0) {
    throw Error(ErrorCode::degenerate_mode, "D0 vanishes; f1 is undefined");
  }
  const double f1 = std::abs(c.c1 * c.d0 - 2.0 * c.c0 * c.d1) / std::pow(std::abs(c.d0), 3);
  const double f0 = c.c0 / (c.d0 * c.d0);
  const double residual = f1 / f0;
  return {residual <= tol, residual};
}

}  // namespace tuned_source::theorems
