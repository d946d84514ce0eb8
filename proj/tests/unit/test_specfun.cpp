#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tuned_source/error.hpp"
#include "tuned_source/quadrature.hpp"
#include "tuned_source/specfun.hpp"

using namespace tuned_source;
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

TEST_CASE("bessel_j exact values") {
  CHECK(specfun::bessel_j(0, 0.0) == 1.0);
  CHECK(specfun::bessel_j(3, 0.0) == 0.0);
  CHECK(specfun::bessel_j(1, pi) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(specfun::bessel_j(0, pi / 2) == doctest::Approx(2.0 / pi).epsilon(1e-15));
}

TEST_CASE("bessel_j matches the 40-term ascending series at (5, 2)") {
  const double expected = oracle::bessel_j_series(5, 2.0);
  CHECK(std::abs(specfun::bessel_j(5, 2.0) - expected) <= 1e-12 * std::abs(expected));
}

TEST_CASE("bessel_j small-argument limit") {
  for (int l = 0; l <= 10; ++l) {
    double dfact = 1.0;
    for (int i = 3; i <= 2 * l + 1; i += 2) dfact *= i;
    const double x = 1e-6;
    CHECK(specfun::bessel_j(l, x) == doctest::Approx(std::pow(x, l) / dfact).epsilon(1e-10));
  }
  // Deep underflow region keeps low orders exact.
  CHECK(specfun::bessel_j(0, 1e-200) == 1.0);
}

TEST_CASE("bessel_j agrees with libstdc++ for l <= 50, |x| <= 60") {
  // libstdc++ loses accuracy (~1e-10) at large arguments, so the cross-check
  // stops at 60; the far range is pinned by 30-digit reference values below.
  double worst = 0.0;
  for (int l = 0; l <= 50; ++l) {
    for (double x : {0.01, 0.3, 0.9, 1.1, 2.0, 5.0, 9.7, 17.3, 25.0, 33.3, 49.0, 50.5, 51.0, 59.9}) {
      for (double sx : {x, -x}) {
        const double got = specfun::bessel_j(l, sx);
        const double ref = oracle::bessel_j_std(l, sx);
        // Relative to the local envelope: near zeros only absolute accuracy is meaningful.
        const double envelope = std::max(std::abs(ref), x > l ? 0.1 / x : 0.0);
        worst = std::max(worst, std::abs(got - ref) / envelope);
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel_j large-argument reference values") {
  // mpmath, 30 significant digits.
  struct Ref {
    int l;
    double x;
    double value;
  };
  const Ref refs[] = {
      {0, 999.0, -0.000026487239977041168058},  {6, 999.0, 5.4482359717277015441e-6},
      {13, 640.1, -0.001250665160751317822},    {25, 333.3, -0.00089956417031426217977},
      {50, 999.0, -0.0009505687695000641286},   {50, 640.1, -0.0014628512151812706676},
      {37, 1000.0, 0.00010566164887511090563},  {49, 120.0, 0.00013514246450317918069},
      {41, 120.0, 0.00012398335257964122339},   {36, 120.0, -0.00059637763619948502277},
      {20, 77.7, -0.012487996617254015595},     {45, 49.0, 0.032700155807923790871},
      {50, 50.5, 0.021341511498577166553},      {30, 33.3, 0.045927852097917542328},
  };
  for (const auto& r : refs) {
    CHECK(std::abs(specfun::bessel_j(r.l, r.x) - r.value) <= 1e-12 * std::abs(r.value));
  }
}

TEST_CASE("sequence agrees with single evaluations") {
  std::vector<double> seq(31);
  for (double x : {0.5, 3.0, 14.0, 29.5, 45.0}) {
    specfun::bessel_j_sequence(x, seq);
    for (int l = 0; l <= 30; ++l) {
      CHECK(seq[l] == doctest::Approx(specfun::bessel_j(l, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("recurrence residual and parity on l in [0, 20], x in [-50, 50]") {
  double worst_recurrence = 0.0;
  double worst_parity = 0.0;
  for (int l = 0; l <= 20; ++l) {
    for (int i = -500; i <= 500; ++i) {
      if (i == 0) continue;
      const double x = 0.1 * i + 0.0123;
      const auto j = specfun::bessel_j_neighbors(l, x);
      const double residual = std::abs(j.below + j.above - (2 * l + 1) * j.value / x);
      worst_recurrence = std::max(worst_recurrence, residual / std::max(1.0, std::abs(j.value)));
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      worst_parity = std::max(worst_parity,
                              std::abs(specfun::bessel_j(l, -x) - sign * specfun::bessel_j(l, x)));
      if (l >= 1) {
        worst_parity = std::max(
            worst_parity, std::abs(specfun::bessel_u(l, -x) + sign * specfun::bessel_u(l, x)));
      }
    }
  }
  CHECK(worst_recurrence <= 1e-10);
  CHECK(worst_parity <= 1e-14);
}

TEST_CASE("bessel_u values") {
  CHECK(specfun::bessel_u(0, pi) == doctest::Approx(-1.0 / pi).epsilon(1e-15));
  CHECK(specfun::bessel_u(1, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // Central difference of x j_3(x) at 1.5 with step halving until successive
  // estimates agree to 1e-9, then divided by x.
  auto g = [](double x) { return x * oracle::bessel_j_std(3, x); };
  const double x = 1.5;
  double h = 1e-2;
  double previous = (g(x + h) - g(x - h)) / (2 * h);
  double estimate = previous;
  for (int i = 0; i < 30; ++i) {
    h *= 0.5;
    estimate = (g(x + h) - g(x - h)) / (2 * h);
    if (std::abs(estimate - previous) <= 1e-9 * std::abs(estimate)) break;
    previous = estimate;
  }
  CHECK(specfun::bessel_u(3, x) == doctest::Approx(estimate / x).epsilon(1e-8));
}

TEST_CASE("bessel_u is the derivative kernel of x j_l(x)") {
  for (int l = 1; l <= 6; ++l) {
    for (double x : {0.2, 1.0, 4.5, 12.0}) {
      // d/dx[x j_l] = j_l + x j_l', j_l' = l j_l / x - j_{l+1}.
      const double direct = ((l + 1) * oracle::bessel_j_std(l, x) - x * oracle::bessel_j_std(l + 1, x)) / x;
      CHECK(specfun::bessel_u(l, x) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("lommel_first examples") {
  CHECK(specfun::lommel_first(0, 1.0, pi) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(specfun::lommel_first(1, 2.0, pi / 2) ==
        doctest::Approx(specfun::lommel_first(1, 1.0, pi) / 8).epsilon(1e-14));

  auto integrand = [](double r) {
    const double j = oracle::bessel_j_std(2, 1.3 * r);
    return r * r * j * j;
  };
  quadrature::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  const double q = quadrature::integrate_radial(integrand, 4.0, opts).value;
  CHECK(std::abs(specfun::lommel_first(2, 1.3, 4.0) - q) <= 1e-10 * q);
}

TEST_CASE("lommel_first equals its defining integral on a 200-point grid") {
  double worst = 0.0;
  int count = 0;
  for (int l = 0; l < 10; ++l) {
    for (double alpha : {-3.0, 0.4, 1.0, 2.5, 7.0}) {
      for (double a : {0.3, 1.0, 2.2, 5.0}) {
        auto f = [&](double r) {
          const double j = oracle::bessel_j_std(l, alpha * r);
          return r * r * j * j;
        };
        const double closed = specfun::lommel_first(l, alpha, a);
        CHECK(closed > 0.0);
        const double panels = std::max(8.0, std::ceil(std::abs(alpha) * a));
        const double q = oracle::gauss_legendre(f, 0.0, a, static_cast<int>(4 * panels));
        worst = std::max(worst, std::abs(closed - q) / q);
        ++count;
      }
    }
  }
  CHECK(count == 200);
  CHECK(worst <= 1e-10);
}

TEST_CASE("specfun error paths") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(code_of([&] { specfun::bessel_j(2, inf); }) == ErrorCode::invalid_input);
  CHECK(code_of([&] { specfun::bessel_j(2, std::nan("")); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { specfun::bessel_j(-1, 1.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { specfun::bessel_u(0, 0.0); }) == ErrorCode::singularity);
  CHECK(code_of([] { specfun::lommel_first(1, 1.0, 0.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { specfun::lommel_first(1, 0.0, 1.0); }) == ErrorCode::invalid_input);
}
