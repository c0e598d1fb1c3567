#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ojl/distributions.hpp"
#include "ojl/specfun.hpp"
#include "ojl/stats.hpp"

namespace {

using ojl::Rng;
using ojl::Vector;

constexpr double kAlpha = 0.01;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

TEST(SampleGammaHalf, MeanAndVariance) {
  Rng rng(101);
  const auto g = ojl::sample_gamma_half(rng, 1'000'000);
  const double mean = mean_of(g);
  EXPECT_NEAR(mean, 0.5, 0.002);
  double var = 0.0;
  for (double x : g) var += (x - mean) * (x - mean);
  var /= static_cast<double>(g.size() - 1);
  EXPECT_NEAR(var, 0.5, 0.01);
  for (double x : g) ASSERT_GT(x, 0.0);
}

TEST(SampleGammaHalf, SameLawAsHalfChiSquare) {
  Rng rng(102);
  const auto g = ojl::sample_gamma_half(rng, 10'000);
  std::vector<double> half_chi(10'000);
  for (auto& x : half_chi) {
    const double n = rng.normal();
    x = 0.5 * n * n;
  }
  EXPECT_LE(ojl::stats::ks_statistic(g, half_chi), ojl::stats::ks_critical(g.size(), half_chi.size(), kAlpha));
}

TEST(SampleGammaHalf, RejectsZeroCount) {
  Rng rng(1);
  EXPECT_THROW(ojl::sample_gamma_half(rng, 0), ojl::domain_error);
}

TEST(SampleGamma, MeanForSeveralShapes) {
  Rng rng(103);
  for (double shape : {0.3, 1.0, 3.7, 250.0}) {
    constexpr int n = 200'000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += ojl::sample_gamma(rng, shape);
    // Var = shape, SE = sqrt(shape / n).
    EXPECT_NEAR(s / n, shape, 4.0 * std::sqrt(shape / n)) << "shape=" << shape;
  }
  EXPECT_THROW(ojl::sample_gamma(rng, 0.0), ojl::domain_error);
}

TEST(SampleDirichlet, SumsToOne) {
  Rng rng(104);
  for (int m : {2, 3, 17, 400}) {
    const auto params = ojl::DirichletParams::symmetric(m, 0.5);
    for (int i = 0; i < 100; ++i) {
      const Vector z = ojl::sample_dirichlet(rng, params);
      ASSERT_NEAR(z.sum(), 1.0, 1e-12);
      ASSERT_GE(z.minCoeff(), 0.0);
    }
  }
}

TEST(SampleDirichlet, ArcsineMarginal) {
  Rng rng(105);
  const ojl::DirichletParams params({0.5, 0.5});
  constexpr int n = 100'000;
  int below = 0;
  for (int i = 0; i < n; ++i) below += ojl::sample_dirichlet(rng, params)[0] <= 0.5 ? 1 : 0;
  const double expected = ojl::beta_cdf(0.5, {0.5, 0.5});
  const double se = std::sqrt(expected * (1.0 - expected) / n);
  EXPECT_NEAR(static_cast<double>(below) / n, expected, 3.0 * se);
}

TEST(SampleDirichlet, FlatMarginalMeans) {
  Rng rng(106);
  const ojl::DirichletParams params({1.0, 1.0, 1.0});
  constexpr int n = 100'000;
  Vector sum = Vector::Zero(3);
  for (int i = 0; i < n; ++i) sum += ojl::sample_dirichlet(rng, params);
  const double se = std::sqrt((1.0 / 18.0) / n);  // Beta(1, 2) variance
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(sum[k] / n, 1.0 / 3.0, 3.0 * se);
}

TEST(SampleDirichlet, InvalidParams) {
  EXPECT_THROW(ojl::DirichletParams({1.0}), ojl::domain_error);
  EXPECT_THROW(ojl::DirichletParams({1.0, 0.0}), ojl::domain_error);
  EXPECT_THROW(ojl::DirichletParams({1.0, -1.0, 2.0}), ojl::domain_error);
}

TEST(SampleDirichlet, AggregationIsBeta) {
  // Sum of the first n components of Dirichlet(1/2 1_m) ~ Beta(n/2, (m-n)/2).
  Rng rng(107);
  constexpr int m = 10;
  constexpr int n = 3;
  constexpr int draws = 20'000;
  const auto params = ojl::DirichletParams::symmetric(m, 0.5);
  std::vector<double> sums(draws);
  for (auto& s : sums) s = ojl::sample_dirichlet(rng, params).head(n).sum();
  const ojl::BetaParams beta(n / 2.0, (m - n) / 2.0);
  const double d = ojl::stats::ecdf_distance(sums, [&](double x) { return ojl::beta_cdf(std::clamp(x, 0.0, 1.0), beta); });
  EXPECT_LE(d, ojl::stats::dkw_band(draws, kAlpha));
}

TEST(SampleSphere, UnitNorm) {
  Rng rng(108);
  for (int m : {2, 3, 50, 1000}) {
    for (int i = 0; i < 50; ++i) {
      ASSERT_NEAR(ojl::sample_sphere_dirichlet(rng, m).coords().squaredNorm(), 1.0, 1e-9);
      ASSERT_NEAR(ojl::sample_sphere_gaussian(rng, m).coords().squaredNorm(), 1.0, 1e-9);
    }
  }
}

TEST(SampleSphere, RejectsDimensionBelowTwo) {
  Rng rng(1);
  EXPECT_THROW(ojl::sample_sphere_dirichlet(rng, 1), ojl::domain_error);
  EXPECT_THROW(ojl::sample_sphere_gaussian(rng, 1), ojl::domain_error);
}

TEST(SampleSphere, DirichletRouteMatchesGaussianRoute) {
  Rng rng(109);
  constexpr int draws = 10'000;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> dir(draws), gauss(draws);
    for (int i = 0; i < draws; ++i) {
      dir[i] = ojl::sample_sphere_dirichlet(rng, 3)[k];
      gauss[i] = ojl::sample_sphere_gaussian(rng, 3)[k];
    }
    EXPECT_LE(ojl::stats::ks_statistic(dir, gauss), ojl::stats::ks_critical(draws, draws, kAlpha)) << "coord " << k;
  }
}

TEST(SampleSphere, SquaredCoordinateIsBetaHalfOne) {
  // m = 3: X_1^2 ~ Beta(1/2, 1).
  Rng rng(110);
  constexpr int draws = 10'000;
  std::vector<double> sq(draws);
  for (auto& s : sq) {
    const double x = ojl::sample_sphere_dirichlet(rng, 3)[0];
    s = x * x;
  }
  const ojl::BetaParams beta(0.5, 1.0);
  const double d = ojl::stats::ecdf_distance(sq, [&](double x) { return ojl::beta_cdf(std::clamp(x, 0.0, 1.0), beta); });
  EXPECT_LE(d, ojl::stats::dkw_band(draws, kAlpha));
}

TEST(SampleSphere, SquaredGaussianCoordinatesAreDirichletHalf) {
  Rng rng(111);
  constexpr int m = 5;
  constexpr int draws = 10'000;
  const auto params = ojl::DirichletParams::symmetric(m, 0.5);
  for (int k = 0; k < m; ++k) {
    std::vector<double> gauss(draws), dir(draws);
    for (int i = 0; i < draws; ++i) {
      const double x = ojl::sample_sphere_gaussian(rng, m)[k];
      gauss[i] = x * x;
      dir[i] = ojl::sample_dirichlet(rng, params)[k];
    }
    EXPECT_LE(ojl::stats::ks_statistic(gauss, dir), ojl::stats::ks_critical(draws, draws, kAlpha)) << "coord " << k;
  }
}

TEST(SampleSphereGaussian, CircleAngleIsUniform) {
  Rng rng(112);
  constexpr int draws = 100'000;
  constexpr int bins = 36;
  std::array<std::size_t, bins> counts{};
  for (int i = 0; i < draws; ++i) {
    const auto x = ojl::sample_sphere_gaussian(rng, 2);
    double angle = std::atan2(x[1], x[0]);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    const int bin = std::min(bins - 1, static_cast<int>(angle / (2.0 * std::numbers::pi) * bins));
    ++counts[bin];
  }
  EXPECT_LE(ojl::stats::chi_square_uniform(counts), ojl::stats::chi_square_critical(bins - 1, kAlpha));
}

TEST(SampleSphereGaussian, CoordinateMeanIsZero) {
  Rng rng(113);
  constexpr int m = 7;
  constexpr int draws = 100'000;
  double s = 0.0;
  for (int i = 0; i < draws; ++i) s += ojl::sample_sphere_gaussian(rng, m)[0];
  // Var X_1 = 1 / m.
  EXPECT_NEAR(s / draws, 0.0, 3.0 * std::sqrt(1.0 / m / draws));
}

TEST(SampleSphereGaussian, OrthogonalInvariance) {
  Rng rng(114);
  Rng rotation_rng(9001);
  constexpr int m = 4;
  constexpr int draws = 10'000;
  const ojl::Matrix r = ojl::sample_haar_orthogonal(rotation_rng, m).matrix();
  std::vector<double> rotated(draws), plain(draws);
  for (int i = 0; i < draws; ++i) {
    rotated[i] = (r * ojl::sample_sphere_gaussian(rng, m).coords())[0];
    plain[i] = ojl::sample_sphere_gaussian(rng, m)[0];
  }
  EXPECT_LE(ojl::stats::ks_statistic(rotated, plain), ojl::stats::ks_critical(draws, draws, kAlpha));
}

TEST(SampleHaar, OneDimensionalIsRandomSign) {
  Rng rng(115);
  constexpr int draws = 10'000;
  int plus = 0;
  for (int i = 0; i < draws; ++i) {
    const double q = ojl::sample_haar_orthogonal(rng, 1).matrix()(0, 0);
    ASSERT_TRUE(q == 1.0 || q == -1.0);
    plus += q > 0 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(plus) / draws, 0.5, 3.0 * std::sqrt(0.25 / draws));
}

TEST(SampleHaar, Orthogonal) {
  Rng rng(116);
  for (int i = 0; i < 100; ++i) {
    const ojl::Matrix q = ojl::sample_haar_orthogonal(rng, 5).matrix();
    EXPECT_LT((q.transpose() * q - ojl::Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_THROW(ojl::sample_haar_orthogonal(rng, 0), ojl::domain_error);
}

TEST(SampleHaar, FirstColumnIsUniformOnSphere) {
  Rng rng(117);
  constexpr int draws = 10'000;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> haar(draws), gauss(draws);
    for (int i = 0; i < draws; ++i) {
      haar[i] = ojl::sample_haar_orthogonal(rng, 3).matrix()(k, 0);
      gauss[i] = ojl::sample_sphere_gaussian(rng, 3)[k];
    }
    EXPECT_LE(ojl::stats::ks_statistic(haar, gauss), ojl::stats::ks_critical(draws, draws, kAlpha)) << "coord " << k;
  }
}

TEST(SampleHaar, SignCorrectionMatters) {
  // Diagonal of a Haar matrix is symmetric around 0; the uncorrected
  // Householder Q from Eigen is biased. Check the corrected sampler's mean.
  Rng rng(118);
  constexpr int draws = 20'000;
  double s = 0.0;
  for (int i = 0; i < draws; ++i) s += ojl::sample_haar_orthogonal(rng, 3).matrix()(0, 0);
  EXPECT_NEAR(s / draws, 0.0, 3.0 * std::sqrt(1.0 / 3.0 / draws));
}

TEST(SampleStiefel, SquareCaseIsOrthogonal) {
  Rng rng(119);
  for (int i = 0; i < 100; ++i) {
    const ojl::Matrix w = ojl::sample_stiefel_rows(rng, 3, 3);
    EXPECT_LT((w.transpose() * w - ojl::Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(SampleStiefel, OrthonormalRows) {
  Rng rng(120);
  for (auto [n, m] : {std::pair{1, 2}, {4, 9}, {30, 200}}) {
    const ojl::Matrix w = ojl::sample_stiefel_rows(rng, n, m);
    ASSERT_EQ(w.rows(), n);
    ASSERT_EQ(w.cols(), m);
    EXPECT_LT((w * w.transpose() - ojl::Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_THROW(ojl::sample_stiefel_rows(rng, 5, 4), ojl::domain_error);
  EXPECT_THROW(ojl::sample_stiefel_rows(rng, 0, 4), ojl::domain_error);
}

TEST(SampleStiefel, ProjectedSquaredNormIsBeta) {
  // n = 2, m = 6: |W x|^2 ~ Beta(1, 2) for any fixed unit x.
  Rng rng(121);
  constexpr int draws = 100'000;
  Vector x = Vector::Zero(6);
  x << 0.5, -0.5, 0.5, 0.5, 0.0, 0.0;
  std::vector<double> sq(draws);
  for (auto& s : sq) s = (ojl::sample_stiefel_rows(rng, 2, 6) * x).squaredNorm();
  const ojl::BetaParams beta(1.0, 2.0);
  const double d = ojl::stats::ecdf_distance(sq, [&](double v) { return ojl::beta_cdf(std::clamp(v, 0.0, 1.0), beta); });
  EXPECT_LE(d, ojl::stats::dkw_band(draws, kAlpha));
}

TEST(SampleStiefel, SingleRowInPlaneIsUniformAngle) {
  Rng rng(122);
  constexpr int draws = 10'000;
  std::vector<double> angles(draws);
  for (auto& a : angles) {
    const ojl::Matrix w = ojl::sample_stiefel_rows(rng, 1, 2);
    a = std::atan2(w(0, 1), w(0, 0));
  }
  const double d = ojl::stats::ecdf_distance(angles, [](double t) { return (t + std::numbers::pi) / (2.0 * std::numbers::pi); });
  EXPECT_LE(d, ojl::stats::dkw_band(draws, kAlpha));
}

TEST(Rng, SameSeedSameSequence) {
  Rng a(77), b(77);
  EXPECT_EQ(ojl::sample_gamma_half(a, 50), ojl::sample_gamma_half(b, 50));
  EXPECT_EQ(ojl::sample_dirichlet(a, ojl::DirichletParams::symmetric(6, 0.5)),
            ojl::sample_dirichlet(b, ojl::DirichletParams::symmetric(6, 0.5)));
  EXPECT_EQ(ojl::sample_sphere_dirichlet(a, 5).coords(), ojl::sample_sphere_dirichlet(b, 5).coords());
  EXPECT_EQ(ojl::sample_sphere_gaussian(a, 5).coords(), ojl::sample_sphere_gaussian(b, 5).coords());
  EXPECT_EQ(ojl::sample_haar_orthogonal(a, 4).matrix(), ojl::sample_haar_orthogonal(b, 4).matrix());
  EXPECT_EQ(ojl::sample_stiefel_rows(a, 3, 7), ojl::sample_stiefel_rows(b, 3, 7));
}

TEST(Rng, SplitStreamsAreDeterministicAndDistinct) {
  const Rng parent(5);
  Rng c1 = parent.split(0), c1b = parent.split(0), c2 = parent.split(1);
  EXPECT_EQ(c1(), c1b());
  EXPECT_NE(Rng(5).split(0)(), c2());
  Rng consumed(5);
  consumed();
  EXPECT_EQ(consumed.split(3)(), parent.split(3)());
}

TEST(Rng, UniformRange) {
  Rng rng(3);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
