#pragma once

// Goodness-of-fit helpers for Monte Carlo verification: two-sample
// Kolmogorov-Smirnov, one-sample sup distance against a CDF with the
// Dvoretzky-Kiefer-Wolfowitz band, and Pearson's chi-square.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "ojl/error.hpp"

namespace ojl::stats {

/// sup_x |F1(x) - F2(x)| between two empirical CDFs.
inline double ks_statistic(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw domain_error("ks_statistic: samples must be nonempty");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

/// Asymptotic two-sample critical value c(alpha) sqrt((n1 + n2) / (n1 n2)),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
inline double ks_critical(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c * std::sqrt((a + b) / (a * b));
}

inline bool ks_two_sample_passes(const std::vector<double>& x, const std::vector<double>& y, double alpha) {
  return ks_statistic(x, y) <= ks_critical(x.size(), y.size(), alpha);
}

/// sup_x |F_n(x) - F(x)| for a sample against a continuous CDF.
inline double ecdf_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw domain_error("ecdf_distance: sample must be nonempty");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

/// DKW half-width sqrt(ln(2 / alpha) / (2 n)).
inline double dkw_band(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

/// Pearson statistic for observed counts against equal expected counts.
inline double chi_square_uniform(std::span<const std::size_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi2 = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    chi2 += diff * diff / expected;
  }
  return chi2;
}

inline double chi_square_critical(std::size_t dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(static_cast<double>(dof)), alpha));
}

}  // namespace ojl::stats
