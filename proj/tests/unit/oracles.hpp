#pragma once

// Reference implementations used only by tests. None of these call into the
// library code paths they are used to check.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// Truncated ascending series of j_l(x) with a fixed number of terms,
/// accumulated in long double.
inline double bessel_j_series(int l, double x, int terms = 40) {
  long double double_factorial = 1.0L;
  for (int i = 3; i <= 2 * l + 1; i += 2) double_factorial *= i;
  long double sum = 0.0L;
  long double term = 1.0L;
  const long double q = -0.5L * x * x;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) term *= q / (k * (2.0L * l + 2.0L * k + 1.0L));
    sum += term;
  }
  return static_cast<double>(std::pow(static_cast<long double>(x), l) / double_factorial * sum);
}

/// libstdc++'s spherical Bessel, extended to negative arguments by parity.
inline double bessel_j_std(int l, double x) {
  const double v = std::sph_bessel(static_cast<unsigned>(l), std::abs(x));
  return (x < 0.0 && l % 2 != 0) ? -v : v;
}

/// Composite 10-point Gauss-Legendre on equal panels.
inline double gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                             int panels) {
  static constexpr double nodes[5] = {0.148874338981631210884826001129720,
                                      0.433395394129247190799265943165784,
                                      0.679409568299024406234327365114874,
                                      0.865063366688984510732096688423493,
                                      0.973906528517171720077964012084452};
  static constexpr double weights[5] = {0.295524224714752870173892994651338,
                                        0.269266719309996355091226921569469,
                                        0.219086362515982043995534934228163,
                                        0.149451349150580593145776339657697,
                                        0.066671344308688137593568809893332};
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width;
    const double h = 0.5 * width;
    for (int i = 0; i < 5; ++i) total += h * weights[i] * (f(c - h * nodes[i]) + f(c + h * nodes[i]));
  }
  return total;
}

/// Ascending series of j_l(x) in quad precision, for moderate |x|.
inline __float128 bessel_j_quad(int l, __float128 x) {
  __float128 double_factorial = 1;
  for (int i = 3; i <= 2 * l + 1; i += 2) double_factorial *= i;
  __float128 power = 1;
  for (int i = 0; i < l; ++i) power *= x;
  __float128 sum = 0, term = 1;
  const __float128 q = -x * x / 2;
  for (int k = 0; k < 120; ++k) {
    if (k > 0) term *= q / (k * (2 * l + 2 * k + 1));
    sum += term;
  }
  return power / double_factorial * sum;
}

/// Exact second chi-coefficient of N_2(K) / M_2(k, K)^2, K^2 = k^2 - chi mu omega,
/// obtained by symbolic series expansion of the Lommel closed forms.
/// A = j_{l-1}(ka), B = j_l(ka). The polynomial cancels heavily for small ka,
/// so it is evaluated in quad precision. Valid for |ka| up to about 20.
inline double f2_j2_exact(int l, double k, double a, double mu_omega) {
  using Q = __float128;
  const Q x = static_cast<Q>(k) * a;
  const Q A = bessel_j_quad(l - 1, x);
  const Q B = bessel_j_quad(l, x);
  const Q L = l;
  const Q x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
  const Q A2 = A * A, A3 = A2 * A, A4 = A2 * A2;
  const Q B2 = B * B, B3 = B2 * B, B4 = B2 * B2;
  const Q L2 = L * L, L3 = L2 * L, L4 = L2 * L2;
  const Q num =
      -4 * A4 * L2 * x2 - 4 * A4 * L * x2 + 4 * A4 * x4 + 3 * A4 * x2 + 16 * A3 * B * L3 * x +
      24 * A3 * B * L2 * x - 16 * A3 * B * L * x3 - 4 * A3 * B * L * x + 8 * A3 * B * x3 -
      6 * A3 * B * x - 16 * A2 * B2 * L4 - 32 * A2 * B2 * L3 + 8 * A2 * B2 * L2 * x2 -
      8 * A2 * B2 * L2 - 40 * A2 * B2 * L * x2 + 8 * A2 * B2 * L + 8 * A2 * B2 * x4 -
      6 * A2 * B2 * x2 + 3 * A2 * B2 + 16 * A * B3 * L3 * x + 56 * A * B3 * L2 * x -
      16 * A * B3 * L * x3 + 12 * A * B3 * L * x + 8 * A * B3 * x3 - 6 * A * B3 * x -
      4 * B4 * L2 * x2 - 20 * B4 * L * x2 + 4 * B4 * x4 - 9 * B4 * x2;
  const Q d = A2 * x - 2 * A * B * L - A * B + B2 * x;
  const Q f2_unit = num / (24 * x3 * d * d * d);  // a = 1, k = x, mu omega = 1
  // ratio scales as a^-3 G(ka, chi mu omega / k^2).
  const Q k2 = static_cast<Q>(k) * k;
  const Q a3 = static_cast<Q>(a) * a * a;
  return static_cast<double>(f2_unit * x4 * mu_omega * mu_omega / (k2 * k2 * a3));
}

}  // namespace oracle
