#pragma once

// Maximal Beta mass captured by a scaled window [p z, q z].
//
// For Z ~ Dirichlet(alpha) and a strict index subset I, no nonnegative
// weighting W independent of Z can keep sum_{i in I} W_i Z_i inside [p, q]
// with probability larger than max_z P[p z <= Beta(a, b) <= q z], where
// a = sum_{i in I} alpha_i and b = sum_{i not in I} alpha_i. Constant weights
// W_i = 1 / z* attain it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "ojl/distributions.hpp"
#include "ojl/error.hpp"
#include "ojl/specfun.hpp"

namespace ojl {

/// Beta shape plus window ratios 0 < p < q.
class WindowProblem {
 public:
  WindowProblem(BetaParams params, double p, double q) : params_(params), p_(p), q_(q) {
    if (!(p > 0.0) || !(q > p) || !std::isfinite(q)) {
      throw domain_error("WindowProblem: need 0 < p < q (p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
    }
  }

  const BetaParams& params() const noexcept { return params_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  BetaParams params_;
  double p_;
  double q_;
};

struct WindowSolution {
  double z_star = 0.0;
  double coverage = 0.0;  // window_mass(z_star)
  double bound = 1.0;     // 1 - coverage, computed from the two tails
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline void check_scale(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw domain_error("window: scale z must be finite and positive");
}

// Density with the convention f(x) = 0 for x >= 1.
inline double clamped_pdf(double x, const BetaParams& params) { return x >= 1.0 ? 0.0 : beta_pdf(x, params); }

}  // namespace detail

/// P[p z <= Beta(a, b) <= q z]; window ends beyond 1 are clamped.
inline double window_mass(double z, const WindowProblem& w) {
  detail::check_scale(z);
  const double lo = std::min(w.p() * z, 1.0);
  const double hi = std::min(w.q() * z, 1.0);
  return std::max(0.0, beta_cdf(hi, w.params()) - beta_cdf(lo, w.params()));
}

/// P[Beta(a, b) outside [p z, q z]] as a sum of two tails. Stays accurate
/// when the window holds nearly all of the mass.
inline double window_miss(double z, const WindowProblem& w) {
  detail::check_scale(z);
  const double lo = std::min(w.p() * z, 1.0);
  const double hi = std::min(w.q() * z, 1.0);
  return std::min(1.0, beta_cdf(lo, w.params()) + beta_sf(hi, w.params()));
}

/// d/dz window_mass = q f(q z) - p f(p z), with f = 0 beyond 1.
/// A density pole at a window end propagates as pole_error.
inline double window_gradient(double z, const WindowProblem& w) {
  detail::check_scale(z);
  return w.q() * detail::clamped_pdf(w.q() * z, w.params()) - w.p() * detail::clamped_pdf(w.p() * z, w.params());
}

/// Candidate scales for the initial scan: 256 log-spaced points on
/// [1e-12 / p, 1 / p] plus 64 points spread over +-8 standard deviations of
/// the Beta law mapped into z. The second set keeps very concentrated shapes
/// (large a + b) from falling between log-grid nodes.
inline std::vector<double> window_scan_grid(const WindowProblem& w) {
  constexpr int kLogPoints = 256;
  constexpr int kCentredPoints = 64;
  const double z_max = 1.0 / w.p();
  const double z_min = 1e-12 * z_max;

  std::vector<double> grid;
  grid.reserve(kLogPoints + kCentredPoints);
  const double log_min = std::log(z_min);
  const double log_step = (std::log(z_max) - log_min) / (kLogPoints - 1);
  for (int i = 0; i < kLogPoints - 1; ++i) grid.push_back(std::exp(log_min + log_step * i));
  grid.push_back(z_max);

  const double mean = w.params().mean();
  const double sd = std::sqrt(w.params().variance());
  const double lo = std::max(z_min, (mean - 8.0 * sd) / w.q());
  const double hi = std::min(z_max, (mean + 8.0 * sd) / w.p());
  if (hi > lo) {
    for (int i = 0; i < kCentredPoints; ++i) grid.push_back(lo + (hi - lo) * i / (kCentredPoints - 1));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Global maximizer of window_mass over z in (0, 1/p).
///
/// A grid scan picks the best node; the first-order condition
/// q f(q z) = p f(p z) is then solved on the bracket formed by its
/// neighbours. If the gradient does not change sign there, a derivative-free
/// Brent search on the same bracket returns the best point with
/// converged = false.
inline WindowSolution maximize_window(const WindowProblem& w, double tol = 1e-10) {
  if (!(tol > 0.0) || tol > 1e-3) throw domain_error("maximize_window: tol must lie in (0, 1e-3]");

  const std::vector<double> grid = window_scan_grid(w);
  std::size_t best = 0;
  double best_miss = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double miss = window_miss(grid[i], w);
    if (miss < best_miss) {
      best_miss = miss;
      best = i;
    }
  }

  double lo = best > 0 ? grid[best - 1] : 0.5 * grid[0];
  double hi = best + 1 < grid.size() ? grid[best + 1] : grid[best];

  auto gradient = [&w](double z) {
    try {
      return window_gradient(z, w);
    } catch (const pole_error&) {
      // Only reachable as p z -> 0 with a < 1, where the mass is increasing.
      return std::numeric_limits<double>::infinity();
    }
  };

  WindowSolution sol;
  const double g_lo = gradient(lo);
  const double g_hi = gradient(hi);
  if (g_lo > 0.0 && g_hi < 0.0) {
    // Solve to full precision; tol only decides whether the bracket counts as converged.
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(gradient, lo, hi, g_lo, g_hi,
                                                          boost::math::tools::eps_tolerance<double>(), max_iter);
    sol.iterations = static_cast<int>(max_iter);
    sol.converged = std::abs(b - a) <= tol;
    sol.z_star = std::abs(gradient(a)) <= std::abs(gradient(b)) ? a : b;
  } else {
    std::uintmax_t max_iter = 500;
    auto negated_mass = [&w](double z) { return window_miss(z, w); };
    const auto [z, miss] =
        boost::math::tools::brent_find_minima(negated_mass, lo, hi, std::numeric_limits<double>::digits / 2, max_iter);
    sol.iterations = static_cast<int>(max_iter);
    sol.converged = false;
    sol.z_star = miss <= best_miss ? z : grid[best];
  }
  sol.coverage = window_mass(sol.z_star, w);
  sol.bound = window_miss(sol.z_star, w);
  return sol;
}

/// Minimal probability, over nonnegative weights independent of Z, that
/// sum_{i in subset} W_i Z_i falls outside [p, q] for Z ~ Dirichlet(alpha).
/// Indices are zero-based; the subset must be nonempty and strict.
inline WindowSolution anticoncentration_solution(const DirichletParams& alpha, std::span<const std::size_t> subset,
                                                 double p, double q, double tol = 1e-10) {
  const auto& a = alpha.alpha();
  std::vector<bool> member(a.size(), false);
  for (std::size_t i : subset) {
    if (i >= a.size()) throw domain_error("anticoncentration_bound: subset index out of range");
    member[i] = true;
  }
  const auto inside = static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
  if (inside == 0 || inside == a.size()) {
    throw domain_error("anticoncentration_bound: subset must be nonempty and strict");
  }
  double in_sum = 0.0;
  double out_sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) (member[i] ? in_sum : out_sum) += a[i];
  return maximize_window(WindowProblem(BetaParams(in_sum, out_sum), p, q), tol);
}

inline double anticoncentration_bound(const DirichletParams& alpha, std::span<const std::size_t> subset, double p,
                                      double q) {
  return anticoncentration_solution(alpha, subset, p, q).bound;
}

}  // namespace ojl
