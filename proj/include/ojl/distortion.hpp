#pragma once

// Distortion probabilities P[| |A x|^2 - 1 | > eps] for x uniform on the unit
// sphere (or fixed x and random A), estimated by Monte Carlo along three
// routes: the matrix itself, its Grammian spectrum with Dirichlet(1/2)
// weights, and the exact Beta window for flat spectra.
//
// For X uniform on the sphere, |A X|^2 has the law of sum_k lambda_k X_k^2
// where lambda_k are the eigenvalues of A A^T, and (X_k^2) ~ Dirichlet(1/2 1_m).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "ojl/confidence.hpp"
#include "ojl/distributions.hpp"
#include "ojl/error.hpp"
#include "ojl/linalg.hpp"
#include "ojl/montecarlo.hpp"
#include "ojl/random.hpp"

namespace ojl {

/// Eigenvalues of A A^T, nonincreasing, all >= 0.
class SpectrumWeights {
 public:
  explicit SpectrumWeights(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    for (double l : lambdas_) {
      if (!(l >= 0.0) || !std::isfinite(l)) throw domain_error("SpectrumWeights: weights must be finite and >= 0");
    }
  }

  /// n copies of the same weight.
  static SpectrumWeights flat(std::size_t n, double value) { return SpectrumWeights(std::vector<double>(n, value)); }

  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  bool is_flat(double rel_tol = 1e-12) const {
    if (lambdas_.empty()) return true;
    const auto [lo, hi] = std::minmax_element(lambdas_.begin(), lambdas_.end());
    return *hi - *lo <= rel_tol * std::max(1.0, std::abs(*hi));
  }

 private:
  std::vector<double> lambdas_;
};

enum class DistortionMethod { direct_matrix, eigen_dirichlet, beta_exact };

inline const char* to_string(DistortionMethod m) {
  switch (m) {
    case DistortionMethod::direct_matrix:
      return "direct-matrix";
    case DistortionMethod::eigen_dirichlet:
      return "eigen-dirichlet";
    case DistortionMethod::beta_exact:
      return "beta-exact";
  }
  return "?";
}

struct DistortionReport {
  /// Exact value (flat spectra) or the optimal lower bound delta_star when
  /// defined for the shape; empty otherwise.
  std::optional<double> exact_or_bound;
  double empirical = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  DistortionMethod method = DistortionMethod::direct_matrix;

  /// |empirical - exact_or_bound| <= k standard errors.
  bool agrees(double k = 3.0) const {
    return exact_or_bound && std::abs(empirical - *exact_or_bound) <= k * std_error;
  }
};

inline constexpr std::uint64_t kMinTrials = 1000;

namespace detail {

inline void check_trials(std::uint64_t trials) {
  if (trials < kMinTrials) throw domain_error("at least " + std::to_string(kMinTrials) + " trials are required");
}

inline void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw domain_error("eps must be finite and positive");
}

inline DistortionReport make_report(const Frequency& f, DistortionMethod method, std::optional<double> reference) {
  DistortionReport r;
  r.exact_or_bound = reference;
  r.empirical = f.rate();
  r.std_error = f.std_error();
  r.n_trials = f.trials;
  r.method = method;
  return r;
}

// delta_star for an n x m shape when (m, n, eps) is inside the optimized domain.
inline std::optional<double> optimal_reference(long n, long m, double eps) {
  if (n >= m) return 0.0;
  if (n < 1 || !(eps > 0.0 && eps < 0.5)) return std::nullopt;
  return optimal_confidence(ProblemSpec(m, n, eps)).delta_star;
}

inline bool distorted(double squared_norm, double eps) { return std::abs(squared_norm - 1.0) > eps; }

}  // namespace detail

/// Eigenvalues of A A^T as squared singular values of A, nonincreasing.
inline SpectrumWeights gram_spectrum(const Matrix& a) {
  if (a.rows() > a.cols()) throw domain_error("gram_spectrum: need n <= m for an n x m matrix");
  if (!a.allFinite()) throw domain_error("gram_spectrum: matrix has non-finite entries");
  const Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  std::vector<double> lambdas(static_cast<std::size_t>(a.rows()), 0.0);
  for (Eigen::Index k = 0; k < s.size(); ++k) lambdas[static_cast<std::size_t>(k)] = s[k] * s[k];
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return SpectrumWeights(std::move(lambdas));
}

/// Frequency of | |A x|^2 - 1 | > eps over x uniform on the sphere.
inline DistortionReport distortion_prob_mc_direct(Rng& rng, const Matrix& a, double eps, std::uint64_t trials,
                                                  unsigned threads = 1) {
  detail::check_trials(trials);
  detail::check_eps(eps);
  if (a.rows() > a.cols() || a.cols() < 2) throw domain_error("distortion_prob_mc_direct: need n <= m and m >= 2");
  const Eigen::Index m = a.cols();
  const Frequency f = count_events(
      rng, trials,
      [&](Rng& local) {
        const UnitVector x = sample_sphere_gaussian(local, m);
        return detail::distorted((a * x.coords()).squaredNorm(), eps);
      },
      threads);
  return detail::make_report(f, DistortionMethod::direct_matrix, detail::optimal_reference(a.rows(), m, eps));
}

/// Frequency of | sum_k lambda_k Z_k - 1 | > eps with Z ~ Dirichlet(1/2 1_m).
/// Flat spectra use sum_{k<n} Z_k ~ Beta(n/2, (m-n)/2) directly.
inline DistortionReport distortion_prob_mc_spectral(Rng& rng, const SpectrumWeights& s, long m, double eps,
                                                    std::uint64_t trials, unsigned threads = 1) {
  detail::check_trials(trials);
  detail::check_eps(eps);
  const auto n = static_cast<long>(s.size());
  if (n < 1 || n > m || m < 2) throw domain_error("distortion_prob_mc_spectral: need 1 <= n <= m, m >= 2");
  const auto& lambdas = s.lambdas();

  if (s.is_flat() && n < m) {
    const double weight = lambdas.front();
    const double a = 0.5 * static_cast<double>(n);
    const double b = 0.5 * static_cast<double>(m - n);
    const Frequency f = count_events(
        rng, trials, [&](Rng& local) { return detail::distorted(weight * sample_beta(local, a, b), eps); }, threads);
    double exact = 1.0;
    if (weight > 0.0) {
      const BetaParams beta(a, b);
      const double lo = std::clamp((1.0 - eps) / weight, 0.0, 1.0);
      const double hi = std::min((1.0 + eps) / weight, 1.0);
      exact = std::min(1.0, beta_cdf(lo, beta) + beta_sf(hi, beta));
    }
    return detail::make_report(f, DistortionMethod::beta_exact, exact);
  }

  const auto dirichlet = DirichletParams::symmetric(static_cast<std::size_t>(m), 0.5);
  const Frequency f = count_events(
      rng, trials,
      [&](Rng& local) {
        const Vector z = sample_dirichlet(local, dirichlet);
        double total = 0.0;
        for (long k = 0; k < n; ++k) total += lambdas[static_cast<std::size_t>(k)] * z[k];
        return detail::distorted(total, eps);
      },
      threads);
  return detail::make_report(f, DistortionMethod::eigen_dirichlet, detail::optimal_reference(n, m, eps));
}

/// 1 - P[(1 - eps) lam <= Beta(n/2, (m-n)/2) <= (1 + eps) lam]: the exact
/// distortion probability of any matrix with A A^T = lam^{-1} I_n.
inline double distortion_prob_exact_flat(const ProblemSpec& spec, double lam) {
  if (!(lam > 0.0) || !std::isfinite(lam)) throw domain_error("distortion_prob_exact_flat: lam must be positive");
  return window_miss(lam, spec.window());
}

/// Frequency of | |A x|^2 - |x|^2 | > eps |x|^2 for a fixed x over fresh
/// matrix draws `sample(Rng&) -> ProjectionMatrix`.
template <typename Sampler>
DistortionReport distortion_prob_mc_matrices(Rng& rng, Sampler&& sample, const Vector& x, const ProblemSpec& spec,
                                             std::uint64_t trials, unsigned threads = 1) {
  detail::check_trials(trials);
  if (x.size() != spec.m()) throw domain_error("distortion_prob_mc_matrices: input dimension must equal m");
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw domain_error("distortion_prob_mc_matrices: input must be nonzero");
  const double eps = spec.eps();
  const Frequency f = count_events(
      rng, trials,
      [&](Rng& local) {
        const auto a = sample(local);
        return detail::distorted((a.entries() * x).squaredNorm() / norm2, eps);
      },
      threads);
  return detail::make_report(f, DistortionMethod::direct_matrix, optimal_confidence(spec).delta_star);
}

}  // namespace ojl
