#pragma once

#include <span>

namespace tuned_source::specfun {

/// Spherical Bessel function of the first kind j_l(x) for real x.
///
/// Uses the ascending series near the origin, upward recurrence from
/// j_0 and j_1 when x > l, and normalized downward (Miller) recurrence
/// otherwise. Negative arguments go through the parity j_l(-x) = (-1)^l j_l(x),
/// so that identity holds exactly.
double bessel_j(int l, double x);

/// Fills out[n] = j_n(x) for n = 0 .. out.size() - 1.
void bessel_j_sequence(double x, std::span<double> out);

/// j_{l-1}(x), j_l(x), j_{l+1}(x). For l = 0 the lower neighbour is
/// j_{-1}(x) = cos(x) / x, which is singular at the origin.
struct BesselNeighbors {
  double below;
  double value;
  double above;
};

BesselNeighbors bessel_j_neighbors(int l, double x);

/// u_l(x) = x^{-1} d/dx [x j_l(x)] = [(l+1) j_{l-1}(x) - l j_{l+1}(x)] / (2l+1).
///
/// With this kernel d/dr [r j_l(k r)] = k r u_l(k r). Finite at the origin
/// for l >= 1; u_0(x) = cos(x)/x.
double bessel_u(int l, double x);

/// Same kernel from precomputed neighbours (no validation).
inline double bessel_u(int l, const BesselNeighbors& j) {
  return ((l + 1) * j.below - l * j.above) / (2 * l + 1);
}

/// Lommel's first integral: int_0^a r^2 j_l(alpha r)^2 dr
///   = (a^3 / 2) [j_l(alpha a)^2 - j_{l+1}(alpha a) j_{l-1}(alpha a)].
double lommel_first(int l, double alpha, double a);

}  // namespace tuned_source::specfun
