#include "tuned_source/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tuned_source/error.hpp"

namespace tuned_source::specfun {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void require_order(int l, int min_order = 0) {
  if (l < min_order) {
    throw Error(ErrorCode::invalid_input,
                "spherical Bessel order must be >= " +
                    std::to_string(min_order) + ", got " + std::to_string(l));
  }
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::invalid_input,
                std::string(name) + " must be finite");
  }
}

// Ascending series j_l(x) = x^l/(2l+1)!! sum_k (-x^2/2)^k / (k! (2l+3)...(2l+2k+1)).
double ascending_series(int l, double x) {
  double prefactor = 1.0;
  for (int i = 1; i <= l; ++i) prefactor *= x / (2 * i + 1);
  const double q = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return prefactor * sum;
}

// Requires x > 0.
void sequence_nonnegative(double x, std::span<double> out) {
  const int lmax = static_cast<int>(out.size()) - 1;
  if (lmax < 0) return;

  if (x * x <= 1.0) {
    for (int n = 0; n <= lmax; ++n) out[n] = ascending_series(n, x);
    return;
  }

  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  const double j1 = (s / x - c) / x;

  if (x > lmax) {
    out[0] = j0;
    if (lmax >= 1) out[1] = j1;
    for (int n = 1; n < lmax; ++n) {
      out[n + 1] = (2 * n + 1) / x * out[n] - out[n - 1];
    }
    return;
  }

  // Miller: start well above both lmax and x so the seeded error is damped
  // below double precision by the time the recurrence reaches lmax.
  const double reach = std::max(static_cast<double>(lmax), x);
  const int start =
      lmax + 20 + static_cast<int>(2.0 * std::sqrt(40.0 * reach));
  double upper = 0.0;
  double current = 1e-300;
  for (int n = start; n >= 1; --n) {
    const double lower = (2 * n + 1) / x * current - upper;
    upper = current;
    current = lower;
    if (n - 1 <= lmax) out[n - 1] = current;
    if (std::abs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      upper *= kRescaleBy;
      for (int m = std::min(n - 1, lmax + 1); m <= lmax; ++m) out[m] *= kRescaleBy;
    }
  }
  // current = f_0, upper = f_1 (unnormalized). Normalize against whichever of
  // the exact j_0, j_1 is further from a zero.
  const double scale =
      std::abs(j0) >= std::abs(j1) ? j0 / current : j1 / upper;
  for (int n = 0; n <= lmax; ++n) out[n] *= scale;
}

}  // namespace

void bessel_j_sequence(double x, std::span<double> out) {
  require_finite(x, "argument");
  if (out.empty()) return;
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  sequence_nonnegative(std::abs(x), out);
  if (x < 0.0) {
    for (std::size_t n = 1; n < out.size(); n += 2) out[n] = -out[n];
  }
}

double bessel_j(int l, double x) {
  require_order(l);
  require_finite(x, "argument");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x * x <= 1.0) {
    const double v = ascending_series(l, std::abs(x));
    return (x < 0.0 && l % 2 != 0) ? -v : v;
  }
  std::vector<double> buf(static_cast<std::size_t>(l) + 1);
  bessel_j_sequence(x, buf);
  return buf.back();
}

BesselNeighbors bessel_j_neighbors(int l, double x) {
  require_order(l);
  require_finite(x, "argument");
  double small[8];
  std::vector<double> large;
  std::span<double> buf;
  if (l + 2 <= 8) {
    buf = std::span<double>(small, static_cast<std::size_t>(l) + 2);
  } else {
    large.resize(static_cast<std::size_t>(l) + 2);
    buf = large;
  }
  bessel_j_sequence(x, buf);
  const double above = buf[l + 1];
  const double value = buf[l];
  double below;
  if (l == 0) {
    if (x == 0.0) {
      throw Error(ErrorCode::singularity, "j_{-1}(x) = cos(x)/x is singular at x = 0");
    }
    below = std::cos(x) / x;
  } else {
    below = buf[l - 1];
  }
  return {below, value, above};
}

double bessel_u(int l, double x) {
  require_order(l);
  require_finite(x, "argument");
  if (l == 0 && x == 0.0) {
    throw Error(ErrorCode::singularity, "u_0(x) = cos(x)/x is singular at x = 0");
  }
  return bessel_u(l, bessel_j_neighbors(l, x));
}

double lommel_first(int l, double alpha, double a) {
  require_order(l);
  require_finite(alpha, "alpha");
  require_finite(a, "radius");
  if (!(a > 0.0)) {
    throw Error(ErrorCode::invalid_input, "radius must be positive");
  }
  if (alpha == 0.0) {
    throw Error(ErrorCode::invalid_input, "wavenumber must be nonzero");
  }
  const auto j = bessel_j_neighbors(l, alpha * a);
  return 0.5 * a * a * a * (j.value * j.value - j.above * j.below);
}

}  // namespace tuned_source::specfun
