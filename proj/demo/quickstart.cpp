// Pick an embedding dimension for 1000 points in R^10000, sample the optimal
// projection and check how often pairwise distances stay within 20%.

#include <cmath>
#include <cstdio>

#include "ojl/ojl.hpp"

int main() {
  const long m = 10'000;
  const long n_points = 1000;
  const double eps = 0.2;

  const long n = ojl::min_embed_dim({n_points, m, eps});
  std::printf("embedding dimension: %ld (classic bound: %ld)\n", n, ojl::classic_min_dim(n_points, eps));

  const ojl::ProblemSpec spec(m, n, eps);
  const auto best = ojl::optimal_confidence(spec);
  std::printf("lambda* = %.6f, per-pair failure probability = %.3e\n", best.lambda_star, best.delta_star);

  ojl::Rng rng(1);
  const auto a = ojl::sample_best_projection_fast(rng, spec, best.lambda_star);

  ojl::RowMatrix data(200, m);
  for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = rng.normal();
  const ojl::RowMatrix y = ojl::project_rows(a, data);

  long kept = 0, pairs = 0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < data.rows(); ++j) {
      const double ratio = (y.row(i) - y.row(j)).squaredNorm() / (data.row(i) - data.row(j)).squaredNorm();
      kept += std::abs(ratio - 1.0) <= eps;
      ++pairs;
    }
  }
  std::printf("%ld of %ld pairwise distances within tolerance\n", kept, pairs);
}
