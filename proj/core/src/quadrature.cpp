#include "tuned_source/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "tuned_source/error.hpp"

namespace tuned_source::quadrature {

namespace {

// Gauss-Kronrod 21 point nodes (QUADPACK qk21). Odd positions 1, 3, ..., 9
// are the 10 point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_mass;

  bool operator<(const Panel& other) const { return error < other.error; }
};

double sample(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::integrand_domain,
                "integrand is not finite at r = " + std::to_string(x));
  }
  return v;
}

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, center);
  double kronrod = kKronrodWeights[10] * fc;
  double gauss = 0.0;
  double mass = kKronrodWeights[10] * std::abs(fc);
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = sample(f, center - dx);
    const double f2 = sample(f, center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    mass += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  mass *= std::abs(half);
  return {lo, hi, kronrod, std::abs(kronrod - gauss), mass};
}

void check_options(const QuadratureOptions& options) {
  if (!(options.rel_tol >= 1e-14 && options.rel_tol <= 1e-3)) {
    throw Error(ErrorCode::invalid_input,
                "rel_tol must lie in [1e-14, 1e-3]");
  }
  if (!(options.abs_tol >= 0.0) || options.max_panels < 1) {
    throw Error(ErrorCode::invalid_input, "invalid quadrature options");
  }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureOptions& options) {
  check_options(options);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw Error(ErrorCode::invalid_input, "integration interval must satisfy lo < hi");
  }
  const double wavenumber = std::max(std::abs(options.wavenumber), 1.0);
  const int initial = std::max(
      1, static_cast<int>(std::ceil((hi - lo) * wavenumber / std::numbers::pi)));
  if (initial > options.max_panels) {
    throw Error(ErrorCode::invalid_input, "interval needs more initial panels than the budget allows");
  }

  std::priority_queue<Panel> active;
  double value = 0.0;
  double error = 0.0;
  double retired_error = 0.0;
  const double width = (hi - lo) / initial;
  for (int i = 0; i < initial; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == initial) ? hi : lo + (i + 1) * width;
    Panel p = gauss_kronrod(f, a, b);
    value += p.value;
    error += p.error;
    active.push(p);
  }
  int panels = initial;

  auto target = [&] { return std::max(options.rel_tol * std::abs(value), options.abs_tol); };

  while (error > target() && !active.empty()) {
    Panel worst = active.top();
    active.pop();
    // At rounding level: splitting cannot improve this panel.
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.error <= 50.0 * kEps * worst.abs_mass || mid <= worst.lo || mid >= worst.hi) {
      retired_error += worst.error;
      continue;
    }
    if (panels + 1 > options.max_panels) {
      throw ConvergenceError("quadrature did not converge within " +
                                 std::to_string(options.max_panels) + " panels",
                             value, error);
    }
    Panel left = gauss_kronrod(f, worst.lo, mid);
    Panel right = gauss_kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  double total = 0.0;
  double total_error = retired_error;
  std::vector<Panel> rest;
  rest.reserve(active.size());
  while (!active.empty()) {
    rest.push_back(active.top());
    active.pop();
  }
  std::sort(rest.begin(), rest.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const Panel& p : rest) {
    total += p.value;
    total_error += p.error;
  }
  if (retired_error > 0.0) total = value;
  return {total, std::max(total_error, 0.0), panels};
}

QuadratureResult integrate_radial(const Integrand& f, double a,
                                  const QuadratureOptions& options) {
  if (!(a > 0.0)) {
    throw Error(ErrorCode::invalid_input, "upper limit must be positive");
  }
  return integrate(f, 0.0, a, options);
}

QuadratureResult integrate_extended(const Integrand& f, double tail_cut,
                                    const QuadratureOptions& options) {
  if (!(tail_cut > 0.0)) {
    throw Error(ErrorCode::invalid_input, "tail cut must be positive");
  }
  return integrate(f, 0.0, tail_cut, options);
}

double integrate_fixed(const Integrand& f, double lo, double hi, int panels) {
  if (panels < 1 || !(hi > lo)) {
    throw Error(ErrorCode::invalid_input, "fixed rule needs lo < hi and panels >= 1");
  }
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * width;
    const double half = 0.5 * width;
    const double center = a + half;
    double sum = kKronrodWeights[10] * sample(f, center);
    for (int n = 0; n < 10; ++n) {
      const double dx = half * kKronrodNodes[n];
      sum += kKronrodWeights[n] * (sample(f, center - dx) + sample(f, center + dx));
    }
    total += half * sum;
  }
  return total;
}

}  // namespace tuned_source::quadrature
