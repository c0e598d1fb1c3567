#pragma once

// Best achievable distortion probability of an oblivious random projection
// R^m -> R^n at relative tolerance eps:
//
//   delta(m, n, eps) = 1 - max_lambda P[(1 - eps) lambda <= B <= (1 + eps) lambda],
//   B ~ Beta(n / 2, (m - n) / 2),
//
// together with the closed-form sandwich obtained by fixing lambda = E[B] and
// the classic 2 exp(-(n eps^2 / 4)(1 - 2 eps / 3)) bound for comparison.

#include <algorithm>
#include <cmath>
#include <string>

#include "ojl/anticoncentration.hpp"
#include "ojl/error.hpp"
#include "ojl/specfun.hpp"

namespace ojl {

/// One instance (m, n, eps) with 1 <= n < m and 0 < eps < 1/2.
///
/// n >= m is reported as no_reduction (the identity has zero distortion);
/// every other violation is a domain_error.
class ProblemSpec {
 public:
  ProblemSpec(long m, long n, double eps) : m_(m), n_(n), eps_(eps) {
    if (n < 1) throw domain_error("embedding dimension n must be at least 1 (n=" + std::to_string(n) + ")");
    if (m < 1) throw domain_error("data dimension m must be at least 1 (m=" + std::to_string(m) + ")");
    if (!(eps > 0.0 && eps < 0.5)) {
      throw domain_error("distortion eps must satisfy 0 < eps < 1/2 (eps=" + std::to_string(eps) + ")");
    }
    if (n >= m) throw no_reduction("n >= m: no dimension reduction, delta = 0");
  }

  long m() const noexcept { return m_; }
  long n() const noexcept { return n_; }
  double eps() const noexcept { return eps_; }

  /// Law of the squared norm kept by an n-row orthonormal frame: Beta(n/2, (m-n)/2).
  BetaParams beta() const { return {0.5 * static_cast<double>(n_), 0.5 * static_cast<double>(m_ - n_)}; }
  WindowProblem window() const { return {beta(), 1.0 - eps_, 1.0 + eps_}; }

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  long m_;
  long n_;
  double eps_;
};

struct OptimalSolution {
  double lambda_star = 0.0;
  double delta_star = 1.0;
  double window_lo = 0.0;  // lambda_star * (1 - eps)
  double window_hi = 0.0;  // lambda_star * (1 + eps)
  WindowSolution diagnostics;
};

/// delta_star and the optimal scale lambda_star. Non-convergence of the
/// window search is reported through diagnostics.converged.
inline OptimalSolution optimal_confidence(const ProblemSpec& spec, double tol = 1e-10) {
  const WindowSolution w = maximize_window(spec.window(), tol);
  OptimalSolution out;
  out.lambda_star = w.z_star;
  out.delta_star = w.bound;
  out.window_lo = w.z_star * (1.0 - spec.eps());
  out.window_hi = w.z_star * (1.0 + spec.eps());
  out.diagnostics = w;
  return out;
}

/// Tail masses of B around its mean n/m and the sandwich they give:
/// min(upper_tail, lower_tail) <= delta_star <= upper_tail + lower_tail.
struct ApproxBounds {
  double lower = 0.0;
  double upper = 0.0;
  double upper_tail = 0.0;  // P[B > (1 + eps) E[B]]
  double lower_tail = 0.0;  // P[B < (1 - eps) E[B]]
};

inline ApproxBounds approx_bounds(const ProblemSpec& spec) {
  const BetaParams beta = spec.beta();
  const double mean = beta.mean();
  const double hi = (1.0 + spec.eps()) * mean;
  const double lo = (1.0 - spec.eps()) * mean;
  ApproxBounds out;
  out.upper_tail = hi >= 1.0 ? 0.0 : beta_sf(hi, beta);
  out.lower_tail = beta_cdf(lo, beta);
  out.lower = std::min(out.upper_tail, out.lower_tail);
  out.upper = std::min(1.0, out.upper_tail + out.lower_tail);
  return out;
}

/// min(1, 2 exp(-(n eps^2 / 4)(1 - 2 eps / 3))), achieved by scaled Gaussian
/// or Rademacher matrices.
inline double classic_confidence(const ProblemSpec& spec) {
  const double n = static_cast<double>(spec.n());
  const double eps = spec.eps();
  return std::min(1.0, 2.0 * std::exp(-(n * eps * eps / 4.0) * (1.0 - 2.0 * eps / 3.0)));
}

}  // namespace ojl
