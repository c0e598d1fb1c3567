#pragma once

// Scalar special functions for the Beta distribution: log-gamma, the
// regularized incomplete beta function and the Beta density.
//
// Everything here is a pure function and safe to call from any thread.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "ojl/error.hpp"

namespace ojl {

/// Shape parameters (a, b) of a Beta distribution, both strictly positive.
class BetaParams {
 public:
  BetaParams(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw domain_error("BetaParams: shapes must be finite and positive (a=" + std::to_string(a) +
                         ", b=" + std::to_string(b) + ")");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double mean() const noexcept { return a_ / (a_ + b_); }
  double variance() const noexcept {
    const double s = a_ + b_;
    return a_ * b_ / (s * s * (s + 1.0));
  }
  BetaParams swapped() const { return {b_, a_}; }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;

 private:
  double a_;
  double b_;
};

namespace detail {

// (-1)^k zeta(k) / k for k = 2..30: Taylor coefficients of ln Gamma(1 + t).
inline constexpr std::array<double, 29> kLogGammaTaylor = {
    8.2246703342411322e-1,  -4.0068563438653143e-1, 2.7058080842778455e-1,  -2.0738555102867399e-1,
    1.6955717699740819e-1,  -1.4404989676884612e-1, 1.2550966952474304e-1,  -1.1133426586956469e-1,
    1.0009945751278181e-1,  -9.0954017145829042e-2, 8.3353840546109004e-2,  -7.6932516411352191e-2,
    7.1432946295361336e-2,  -6.6668705882420468e-2, 6.2500955141213041e-2,  -5.8823978658684582e-2,
    5.5555767627403611e-2,  -5.2631679379616661e-2, 5.0000047698101694e-2,  -4.7619070330142228e-2,
    4.5454556293204669e-2,  -4.3478266053040259e-2, 4.166666915034121e-2,   -4.0000001192140141e-2,
    3.8461539034675186e-2,  -3.7037037312989326e-2, 3.5714285847333358e-2,  -3.4482758684919301e-2,
    3.3333333364377581e-2,
};

// ln Gamma(1 + t) for |t| <= 1/4.
inline double log_gamma_1p_series(double t) {
  double sum = 0.0;
  for (auto it = kLogGammaTaylor.rbegin(); it != kLogGammaTaylor.rend(); ++it) sum = (sum + *it) * t;
  return (sum - std::numbers::egamma) * t;
}

// Stirling series, accurate to a few ulps for x >= 10.
inline double log_gamma_stirling(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double series =
      r * (1.0 / 12.0 +
           r2 * (-1.0 / 360.0 +
                 r2 * (1.0 / 1260.0 +
                       r2 * (-1.0 / 1680.0 + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 / 156.0))))));
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
///
/// Relative error stays below 1e-12 on [1e-3, 1e6], including next to the
/// zeros at x = 1 and x = 2 where a Taylor expansion takes over.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("log_gamma: argument must be finite and positive");
  if (std::abs(x - 1.0) <= 0.25) return detail::log_gamma_1p_series(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25) return std::log1p(x - 2.0) + detail::log_gamma_1p_series(x - 2.0);
  if (x >= 10.0) return detail::log_gamma_stirling(x);
  // Shift up: Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
  double product = 1.0;
  while (x < 10.0) {
    product *= x;
    x += 1.0;
  }
  return detail::log_gamma_stirling(x) - std::log(product);
}

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
inline double log_beta(const BetaParams& p) { return log_gamma(p.a()) + log_gamma(p.b()) - log_gamma(p.a() + p.b()); }

/// Lower and upper tails of Beta(a, b) at z, each computed without
/// cancellation: lower = I_z(a, b), upper = 1 - I_z(a, b).
struct BetaTails {
  double lower;
  double upper;
};

namespace detail {

// Continued fraction for I_x(a, b) / front, modified Lentz. Converges quickly
// for x < (a + 1) / (a + b + 2).
inline double incbeta_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double stop = 4.0 * std::numeric_limits<double>::epsilon();
  constexpr int max_terms = 200000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int k = 1; k <= max_terms; ++k) {
    const double kk = static_cast<double>(k);
    const double k2 = 2.0 * kk;
    double num = kk * (b - kk) * x / ((qam + k2) * (a + k2));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + kk) * (qab + kk) * x / ((a + k2) * (qap + k2));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < stop) return h;
  }
  throw convergence_error("incomplete beta continued fraction did not converge");
}

// I_x(a, b) via the continued fraction; caller guarantees the fast side.
inline double incbeta_direct(double x, double a, double b, double lbeta) {
  const double log_front = a * std::log(x) + b * std::log1p(-x) - lbeta;
  return std::exp(log_front) * incbeta_fraction(x, a, b) / a;
}

inline void check_unit_interval(double z, const char* who) {
  if (!(z >= 0.0 && z <= 1.0)) throw domain_error(std::string(who) + ": argument must lie in [0, 1]");
}

}  // namespace detail

/// Both tails of Beta(a, b) at z in [0, 1].
inline BetaTails beta_tails(double z, const BetaParams& p) {
  detail::check_unit_interval(z, "beta_tails");
  if (z == 0.0) return {0.0, 1.0};
  if (z == 1.0) return {1.0, 0.0};
  const double a = p.a();
  const double b = p.b();
  const double lbeta = log_beta(p);
  if (z < (a + 1.0) / (a + b + 2.0)) {
    const double lower = std::min(1.0, std::max(0.0, detail::incbeta_direct(z, a, b, lbeta)));
    return {lower, 1.0 - lower};
  }
  const double upper = std::min(1.0, std::max(0.0, detail::incbeta_direct(1.0 - z, b, a, lbeta)));
  return {1.0 - upper, upper};
}

/// Regularized incomplete beta I_z(a, b), the Beta(a, b) CDF.
inline double beta_cdf(double z, const BetaParams& p) { return beta_tails(z, p).lower; }

/// Survival function 1 - I_z(a, b), accurate in the upper tail.
inline double beta_sf(double z, const BetaParams& p) { return beta_tails(z, p).upper; }

/// Beta(a, b) density, computed in log space.
///
/// At z = 0 the density is 0 for a > 1, b for a = 1, and a pole for a < 1
/// (symmetrically at z = 1 with the roles of a and b swapped). Poles raise
/// pole_error instead of returning infinity.
inline double beta_pdf(double z, const BetaParams& p) {
  detail::check_unit_interval(z, "beta_pdf");
  const double a = p.a();
  const double b = p.b();
  if (z == 0.0 || z == 1.0) {
    const double shape = z == 0.0 ? a : b;
    if (shape > 1.0) return 0.0;
    if (shape < 1.0) throw pole_error("beta_pdf: density is unbounded at the endpoint", z);
    return std::exp(-log_beta(p));  // (1 - 0)^(other - 1) / B(a, b)
  }
  return std::exp((a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z) - log_beta(p));
}

}  // namespace ojl
