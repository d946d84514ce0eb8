#include "tuned_source/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tuned_source/error.hpp"

namespace tuned_source::tuning {

namespace {

double evaluate(const Constraint& g, double chi) {
  const double v = g(chi);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::constraint_evaluation,
                "constraint is not finite at chi = " + std::to_string(chi));
  }
  return v;
}

double bisect(const Constraint& g, double lo, double hi, double g_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = evaluate(g, mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ChiSet find_constraint_roots(const Constraint& g, double lo, double hi, int grid_n, double tol,
                             std::optional<Admissibility> admissibility) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::invalid_input, "root search needs a finite interval lo < hi");
  }
  if (grid_n < 2) throw Error(ErrorCode::invalid_input, "grid_n must be >= 2");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_input, "tol must be positive");

  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> chi(n);
  std::vector<double> val(n);
  for (std::size_t i = 0; i < n; ++i) {
    chi[i] = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1);
    val[i] = evaluate(g, chi[i]);
  }

  std::vector<double> found;
  auto sign_change = [&](std::size_t i) {
    return i + 1 < n && ((val[i] < 0.0 && val[i + 1] > 0.0) || (val[i] > 0.0 && val[i + 1] < 0.0));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (val[i] == 0.0) {
      found.push_back(chi[i]);
      continue;
    }
    if (sign_change(i)) found.push_back(bisect(g, chi[i], chi[i + 1], val[i], tol));
    // Touching root: small local minimum of |g| with no neighbouring crossing.
    if (i > 0 && i + 1 < n && std::abs(val[i]) <= tol &&
        std::abs(val[i]) <= std::abs(val[i - 1]) && std::abs(val[i]) <= std::abs(val[i + 1]) &&
        !sign_change(i - 1) && !sign_change(i)) {
      found.push_back(chi[i]);
    }
  }

  std::sort(found.begin(), found.end());
  ChiSet out;
  out.bracket_tol = tol;
  for (double r : found) {
    if (!out.roots.empty() && r - out.roots.back() <= tol) continue;
    if (!out.excluded.empty() && r - out.excluded.back() <= tol) continue;
    if (admissibility && !admissibility->admits(r)) {
      out.excluded.push_back(r);
    } else {
      out.roots.push_back(r);
    }
  }
  return out;
}

double select_chi0(const ChiSet& xi) {
  if (xi.roots.empty()) {
    throw Error(ErrorCode::no_tuned_solution,
                "tuning constraint has no admissible root on the searched interval");
  }
  double best = xi.roots.front();
  for (double r : xi.roots) {
    const double diff = std::abs(r) - std::abs(best);
    if (diff < -xi.bracket_tol) {
      best = r;
    } else if (std::abs(diff) <= xi.bracket_tol && r > best) {
      best = r;
    }
  }
  return best;
}

TabulatedConstraint::TabulatedConstraint(std::vector<double> chi, std::vector<double> g)
    : chi_(std::move(chi)), g_(std::move(g)) {
  if (chi_.size() != g_.size() || chi_.size() < 2) {
    throw Error(ErrorCode::invalid_input, "constraint table needs at least two (chi, g) pairs");
  }
  for (std::size_t i = 0; i < chi_.size(); ++i) {
    if (!std::isfinite(chi_[i]) || !std::isfinite(g_[i])) {
      throw Error(ErrorCode::invalid_input, "constraint table entries must be finite");
    }
    if (i > 0 && !(chi_[i] > chi_[i - 1])) {
      throw Error(ErrorCode::invalid_input, "constraint table chi values must be strictly increasing");
    }
  }
}

double TabulatedConstraint::operator()(double chi) const {
  if (!(chi >= chi_.front() && chi <= chi_.back())) {
    throw Error(ErrorCode::constraint_evaluation,
                "chi = " + std::to_string(chi) + " lies outside the constraint table");
  }
  auto it = std::upper_bound(chi_.begin(), chi_.end(), chi);
  std::size_t i = (it == chi_.end()) ? chi_.size() - 1 : static_cast<std::size_t>(it - chi_.begin());
  i = std::max<std::size_t>(i, 1);
  const double t = (chi - chi_[i - 1]) / (chi_[i] - chi_[i - 1]);
  return g_[i - 1] + t * (g_[i] - g_[i - 1]);
}

}  // namespace tuned_source::tuning
