#pragma once

// Sampling the confidence-optimal projection A = lambda^{-1/2} U I_{n,m} V^T,
// applying it, and the minimal embedding dimension for N points under a
// union bound over their N (N - 1) / 2 pairwise distances.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "ojl/confidence.hpp"
#include "ojl/distributions.hpp"
#include "ojl/error.hpp"
#include "ojl/linalg.hpp"
#include "ojl/random.hpp"

namespace ojl {

/// Dense n x m projection, row-major, with the scale lambda^{-1/2} folded
/// into the entries. For sampled matrices A A^T = lambda^{-1} I_n.
class ProjectionMatrix {
 public:
  ProjectionMatrix(RowMatrix entries, ProblemSpec spec, double lambda)
      : entries_(std::move(entries)), spec_(spec), lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw domain_error("ProjectionMatrix: lambda must be positive");
    if (entries_.rows() != spec_.n() || entries_.cols() != spec_.m()) {
      throw domain_error("ProjectionMatrix: entries must have shape n x m");
    }
  }

  const RowMatrix& entries() const noexcept { return entries_; }
  const ProblemSpec& spec() const noexcept { return spec_; }
  double lambda() const noexcept { return lambda_; }
  double scale() const noexcept { return 1.0 / std::sqrt(lambda_); }
  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }

 private:
  RowMatrix entries_;
  ProblemSpec spec_;
  double lambda_;
};

/// Literal construction lambda^{-1/2} U I_{n,m} V^T with independent Haar U
/// (n x n) and V (m x m). Needs O(m^2) memory; the reference variant.
inline ProjectionMatrix sample_best_projection_exact(Rng& rng, const ProblemSpec& spec, double lambda) {
  const auto n = static_cast<Eigen::Index>(spec.n());
  const auto m = static_cast<Eigen::Index>(spec.m());
  const OrthogonalMatrix v = sample_haar_orthogonal(rng, m);
  const OrthogonalMatrix u = sample_haar_orthogonal(rng, n);
  // U I_{n,m} V^T = U * (first n rows of V^T) = U * (first n columns of V)^T.
  RowMatrix a = (1.0 / std::sqrt(lambda)) * (u.matrix() * v.matrix().leftCols(n).transpose());
  return {std::move(a), spec, lambda};
}

inline ProjectionMatrix sample_best_projection_exact(Rng& rng, const ProblemSpec& spec) {
  return sample_best_projection_exact(rng, spec, optimal_confidence(spec).lambda_star);
}

/// Same law as the exact variant from a uniform n-row orthonormal frame:
/// O(n m) memory, O(n^2 m) work.
inline ProjectionMatrix sample_best_projection_fast(Rng& rng, const ProblemSpec& spec, double lambda) {
  const auto n = static_cast<Eigen::Index>(spec.n());
  const auto m = static_cast<Eigen::Index>(spec.m());
  RowMatrix a = (1.0 / std::sqrt(lambda)) * sample_stiefel_rows(rng, n, m);
  return {std::move(a), spec, lambda};
}

inline ProjectionMatrix sample_best_projection_fast(Rng& rng, const ProblemSpec& spec) {
  return sample_best_projection_fast(rng, spec, optimal_confidence(spec).lambda_star);
}

inline Vector project(const ProjectionMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) {
    throw domain_error("project: input has dimension " + std::to_string(x.size()) + ", matrix expects " +
                       std::to_string(a.cols()));
  }
  return a.entries() * x;
}

/// Projects every row of `rows` (one record per row).
inline RowMatrix project_rows(const ProjectionMatrix& a, const RowMatrix& rows) {
  if (rows.rows() > 0 && rows.cols() != a.cols()) {
    throw domain_error("project: records have dimension " + std::to_string(rows.cols()) + ", matrix expects " +
                       std::to_string(a.cols()));
  }
  if (rows.rows() == 0) return RowMatrix(0, a.rows());
  return rows * a.entries().transpose();
}

/// Minimal-dimension query for N points in R^m. The per-pair failure target
/// is failure_budget * 2 / (N (N - 1)).
struct MinDimQuery {
  long n_points = 2;
  long m = 2;
  double eps = 0.1;
  double failure_budget = 1.0;

  double target() const {
    const double n = static_cast<double>(n_points);
    return failure_budget * 2.0 / (n * (n - 1.0));
  }

  void validate() const {
    if (n_points < 2) throw domain_error("MinDimQuery: need at least 2 points");
    if (m < 2) throw domain_error("MinDimQuery: data dimension must be at least 2");
    if (!(eps > 0.0 && eps < 0.5)) throw domain_error("MinDimQuery: eps must satisfy 0 < eps < 1/2");
    if (!(failure_budget > 0.0) || !std::isfinite(failure_budget)) {
      throw domain_error("MinDimQuery: failure budget must be positive");
    }
  }
};

/// Smallest n in [1, m - 1] with failure(n) <= target, assuming failure is
/// nonincreasing in n. Integer bisection, then a local scan that pins the
/// exact threshold. Throws infeasible_error when even n = m - 1 misses.
inline long smallest_dimension(long m, double target, const std::function<double(long)>& failure) {
  if (failure(m - 1) > target) {
    throw infeasible_error("no embedding dimension below m=" + std::to_string(m) + " reaches failure probability " +
                           std::to_string(target));
  }
  long lo = 0;  // failure(lo) > target, or lo = 0 as a sentinel
  long hi = m - 1;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (failure(mid) <= target ? hi : lo) = mid;
  }
  while (hi > 1 && failure(hi - 1) <= target) --hi;
  return hi;
}

/// Smallest n with delta_star(m, n, eps) <= target.
inline long min_embed_dim(const MinDimQuery& q) {
  q.validate();
  return smallest_dimension(q.m, q.target(),
                            [&q](long n) { return optimal_confidence(ProblemSpec(q.m, n, q.eps)).delta_star; });
}

/// Smallest n whose closed-form upper bound P[|B - E B| > eps E B] meets the target.
inline long approx_min_dim(const MinDimQuery& q) {
  q.validate();
  return smallest_dimension(q.m, q.target(),
                            [&q](long n) { return approx_bounds(ProblemSpec(q.m, n, q.eps)).upper; });
}

/// ceil(4 ln N / (eps^2 / 2 - eps^3 / 3)), the conservative bound shipped by
/// common data-science toolkits.
inline long classic_min_dim(long n_points, double eps) {
  if (n_points < 2) throw domain_error("classic_min_dim: need at least 2 points");
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("classic_min_dim: eps must lie in (0, 1)");
  const double denominator = eps * eps / 2.0 - eps * eps * eps / 3.0;
  return static_cast<long>(std::ceil(4.0 * std::log(static_cast<double>(n_points)) / denominator));
}

}  // namespace ojl
