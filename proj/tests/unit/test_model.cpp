#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tuned_source/error.hpp"
#include "tuned_source/model.hpp"
#include "tuned_source/specfun.hpp"
#include "tuned_source/tuning.hpp"

using namespace tuned_source;
using model::Mode;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::config;
}

}  // namespace

TEST_CASE("classify_substrate") {
  model::Substrate vacuum{1.0, 1.0, 1.0, 1.0};
  CHECK(vacuum.wavenumber() == 1.0);
  CHECK(model::classify_substrate(vacuum) == model::MediumClass::ordinary);

  model::Substrate dng{-2.0, -1.0, 1.0, 1.0};
  CHECK(dng.wavenumber() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK(model::classify_substrate(dng) == model::MediumClass::dng_metamaterial);

  model::Substrate dps{0.5, 0.5, 2.0, 1.0};
  CHECK(dps.wavenumber() == doctest::Approx(1.0));
  CHECK(model::classify_substrate(dps) == model::MediumClass::dps_metamaterial);

  model::Substrate dense{4.0, 1.0, 1.0, 1.0};
  CHECK(model::classify_substrate(dense) == model::MediumClass::ordinary);

  model::Substrate mixed{-1.0, 1.0, 1.0, 1.0};
  CHECK(code_of([&] { model::classify_substrate(mixed); }) == ErrorCode::unsupported_medium);
  model::Substrate nihility{0.0, 1.0, 1.0, 1.0};
  CHECK(code_of([&] { model::classify_substrate(nihility); }) == ErrorCode::unsupported_medium);
  model::Substrate no_radius{1.0, 1.0, 1.0, 0.0};
  CHECK(code_of([&] { no_radius.validate(); }) == ErrorCode::invalid_input);
}

TEST_CASE("Mode invariants") {
  CHECK_NOTHROW(Mode(1, 1, -1));
  CHECK(code_of([] { Mode(3, 1); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { Mode(1, 0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { Mode(2, 2, 3); }) == ErrorCode::invalid_input);
}

TEST_CASE("tuned_wavenumber") {
  CHECK(model::tuned_wavenumber(2.0, 1.0, 0.0).K == 2.0);
  CHECK(model::tuned_wavenumber(-2.0, 1.0, 0.0).K == 2.0);
  CHECK(model::tuned_wavenumber(2.0, 1.0, 3.0).K == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] { model::tuned_wavenumber(1.0, 1.0, 1.0); }) == ErrorCode::evanescent_regime);
  CHECK(code_of([] { model::tuned_wavenumber(0.0, 1.0, 0.0); }) == ErrorCode::invalid_input);
}

TEST_CASE("radial_integrals diagonal j = 2 reduces to Lommel") {
  for (int l = 1; l <= 5; ++l) {
    const double k = 1.3, a = 2.5;
    const auto in = model::radial_integrals(Mode(2, l), k, k, a);
    const double lommel = specfun::lommel_first(l, k, a);
    CHECK(in.n_self_k == lommel);
    CHECK(in.n_self_K == lommel);
    CHECK(std::abs(in.m_cross - lommel) <= 1e-12 * lommel);
  }
}

TEST_CASE("j = 2 cross integral matches the Lommel second integral") {
  auto djl = [](int l, double x) {
    return oracle::bessel_j_std(l - 1, x) - (l + 1) * oracle::bessel_j_std(l, x) / x;
  };
  for (auto [l, k, K, a] : {std::tuple{1, 1.0, 2.0, 1.0}, {3, 0.7, 2.9, 4.0}, {2, -1.5, 0.6, 3.0}}) {
    const double closed = a * a *
                          (k * djl(l, k * a) * oracle::bessel_j_std(l, K * a) -
                           K * oracle::bessel_j_std(l, k * a) * djl(l, K * a)) /
                          (K * K - k * k);
    const double m = model::cross_integral(2, l, k, K, a);
    CHECK(std::abs(m - closed) <= 1e-10 * std::abs(closed));
  }
}

TEST_CASE("parity under K -> -K and k -> -k") {
  for (int l = 1; l <= 4; ++l) {
    const double sign = l % 2 == 0 ? 1.0 : -1.0;
    for (int j : {1, 2}) {
      const auto plus = model::radial_integrals(Mode(j, l), 1.1, 2.3, 2.0);
      const auto minus = model::radial_integrals(Mode(j, l), 1.1, -2.3, 2.0);
      CHECK(minus.m_cross == sign * plus.m_cross);
      CHECK(minus.n_self_K == plus.n_self_K);
      const auto mirrored = model::radial_integrals(Mode(j, l), -1.1, 2.3, 2.0);
      CHECK(mirrored.m_cross == sign * plus.m_cross);
      CHECK(mirrored.n_self_k == plus.n_self_k);
    }
  }
}

TEST_CASE("Cauchy-Schwarz and symmetry on random admissible inputs") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> order(1, 6);
  std::uniform_real_distribution<double> wave(0.2, 6.0);
  std::uniform_real_distribution<double> radius(0.3, 5.0);
  for (int trial = 0; trial < 150; ++trial) {
    const int j = 1 + trial % 2;
    const int l = order(rng);
    const double k = (trial % 3 == 0 ? -1.0 : 1.0) * wave(rng);
    const double K = wave(rng);
    const double a = radius(rng);
    const auto in = model::radial_integrals(Mode(j, l), k, K, a);
    CHECK(in.n_self_k > 0.0);
    CHECK(in.n_self_K > 0.0);
    const double scale = in.n_self_k * in.n_self_K;
    CHECK(scale - in.m_cross * in.m_cross >= -1e-9 * scale);
    const double swapped = model::cross_integral(j, l, K, k, a);
    CHECK(std::abs(swapped - in.m_cross) <= 1e-12 * std::sqrt(scale));
  }
}

TEST_CASE("mode_coefficient examples") {
  const double r = model::mode_coefficient(Mode(2, 1), 1.0, 1.0, pi);
  CHECK(r == doctest::Approx(2.0 / pi).epsilon(1e-12));
  // Independent route: 1 / quadrature of r^2 j_1(r)^2 on [0, pi].
  const double n = oracle::gauss_legendre(
      [](double x) {
        const double j = oracle::bessel_j_std(1, x);
        return x * x * j * j;
      },
      0.0, pi, 16);
  CHECK(r == doctest::Approx(1.0 / n).epsilon(1e-12));

  for (int j : {1, 2}) {
    for (int l : {1, 3}) {
      const double k = 1.7, a = 2.0;
      const double at_zero = model::mode_coefficient(Mode(j, l), k, std::abs(k), a);
      CHECK(at_zero == doctest::Approx(1.0 / model::self_integral(j, l, k, a)).epsilon(1e-12));
      CHECK(model::mode_coefficient(Mode(j, l), -k, 2.1, a) ==
            model::mode_coefficient(Mode(j, l), k, 2.1, a));
      CHECK(model::mode_coefficient(Mode(j, l, -l), k, 2.1, a) ==
            model::mode_coefficient(Mode(j, l, 0), k, 2.1, a));
    }
  }

  model::Substrate s{2.0, 1.0, 1.0, 1.5};
  const auto t = model::tuned_wavenumber(s.wavenumber(), s.mu_omega(), 0.4);
  CHECK(model::mode_coefficient(Mode(1, 2), s, t) ==
        model::mode_coefficient(Mode(1, 2), s.wavenumber(), t.K, s.a));
}

TEST_CASE("degenerate cross integral is an error") {
  // Locate a zero of M_2(1, K) in K on a large sphere and evaluate there.
  const double k = 1.0, a = 10.0;
  auto cross = [&](double K) { return model::cross_integral(2, 1, k, K, a); };
  const auto roots = tuning::find_constraint_roots(cross, 1.2, 3.0, 60, 1e-15);
  REQUIRE(!roots.roots.empty());
  CHECK(code_of([&] { model::mode_coefficient(Mode(2, 1), k, roots.roots.front(), a); }) ==
        ErrorCode::degenerate_mode);
}

TEST_CASE("source_energy") {
  model::Coefficients coeffs{{Mode(2, 1), 0.75}, {Mode(1, 2, 1), 2.5}};
  model::SourceSpec single{{{Mode(2, 1), {1.0, 0.0}}}};
  CHECK(model::source_energy(single, coeffs) == 0.75);

  model::SourceSpec zero{{{Mode(2, 1), {0.0, 0.0}}, {Mode(1, 2, 1), {0.0, 0.0}}}};
  CHECK(model::source_energy(zero, coeffs) == 0.0);
  CHECK(model::source_energy(model::SourceSpec{}, coeffs) == 0.0);

  model::SourceSpec other{{{Mode(1, 2, 1), {0.6, -0.8}}}};
  model::SourceSpec both{{{Mode(2, 1), {1.0, 0.0}}, {Mode(1, 2, 1), {0.6, -0.8}}}};
  CHECK(model::source_energy(both, coeffs) ==
        doctest::Approx(model::source_energy(single, coeffs) + model::source_energy(other, coeffs)));

  model::SourceSpec missing{{{Mode(2, 3), {1.0, 0.0}}}};
  CHECK(code_of([&] { model::source_energy(missing, coeffs); }) == ErrorCode::incomplete_spec);
}

TEST_CASE("energy-difference signs survive a common positive rescaling of R") {
  const double k = 1.2, a = 2.0, mu_omega = 1.0;
  model::SourceSpec spec{{{Mode(1, 1), {1.0, 0.5}}, {Mode(2, 2), {-0.3, 0.2}}, {Mode(2, 3, -2), {0.0, 1.0}}}};
  for (double chi : {-0.3, -0.05, 0.0, 0.1, 0.6}) {
    const auto t = model::tuned_wavenumber(k, mu_omega, chi);
    model::Coefficients untuned, tuned;
    for (const auto& [mode, amp] : spec.amplitudes) {
      untuned[mode] = model::mode_coefficient(mode, k, std::abs(k), a);
      tuned[mode] = model::mode_coefficient(mode, k, t.K, a);
    }
    const double diff = model::source_energy(spec, tuned) - model::source_energy(spec, untuned);
    for (double c : {1e-3, 7.0, 1e4}) {
      model::Coefficients su = untuned, st = tuned;
      for (auto& [m, v] : su) v *= c;
      for (auto& [m, v] : st) v *= c;
      const double scaled = model::source_energy(spec, st) - model::source_energy(spec, su);
      CHECK((scaled >= 0.0) == (diff >= 0.0));
    }
    CHECK(diff >= -1e-9 * model::source_energy(spec, untuned));
  }
}
