#pragma once

// Random samplers: Gamma and Beta variates, Dirichlet vectors, the uniform
// measure on the unit sphere (Gaussian and Dirichlet routes), Haar
// orthogonal matrices and uniform orthonormal row frames.
//
// Every sampler takes its Rng explicitly; there is no global random state.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "ojl/error.hpp"
#include "ojl/linalg.hpp"
#include "ojl/random.hpp"

namespace ojl {

/// Concentration vector of a Dirichlet distribution: length >= 2, all positive.
class DirichletParams {
 public:
  explicit DirichletParams(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 2) throw domain_error("DirichletParams: need at least two components");
    for (double a : alpha_) {
      if (!(a > 0.0) || !std::isfinite(a)) throw domain_error("DirichletParams: components must be positive");
    }
  }

  /// value * (1, ..., 1) of length m.
  static DirichletParams symmetric(std::size_t m, double value) { return DirichletParams(std::vector<double>(m, value)); }

  const std::vector<double>& alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return alpha_.size(); }

 private:
  std::vector<double> alpha_;
};

/// A point on the unit sphere in R^m.
class UnitVector {
 public:
  static constexpr double kTolerance = 1e-9;

  explicit UnitVector(Vector coords) : coords_(std::move(coords)) {
    if (std::abs(coords_.squaredNorm() - 1.0) > kTolerance) throw domain_error("UnitVector: squared norm differs from 1");
  }

  /// Normalizes a nonzero vector.
  static UnitVector normalized(const Vector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw domain_error("UnitVector: cannot normalize a zero vector");
    return UnitVector(v / norm);
  }

  const Vector& coords() const noexcept { return coords_; }
  Eigen::Index size() const noexcept { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// Square matrix Q with Q^T Q = I.
class OrthogonalMatrix {
 public:
  static constexpr double kTolerance = 1e-9;

  explicit OrthogonalMatrix(Matrix q) : q_(std::move(q)) {
    if (q_.rows() != q_.cols()) throw domain_error("OrthogonalMatrix: matrix must be square");
    const Matrix gram = q_.transpose() * q_;
    if ((gram - Matrix::Identity(q_.rows(), q_.cols())).cwiseAbs().maxCoeff() > kTolerance) {
      throw domain_error("OrthogonalMatrix: columns are not orthonormal");
    }
  }

  const Matrix& matrix() const noexcept { return q_; }
  Eigen::Index dim() const noexcept { return q_.rows(); }

 private:
  Matrix q_;
};

/// Gamma(shape, rate = 1) by Marsaglia-Tsang. Shapes below one use the boost
/// Gamma(shape) = Gamma(shape + 1) * U^(1/shape).
inline double sample_gamma(Rng& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw domain_error("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double boosted = sample_gamma(rng, shape + 1.0);
    return boosted * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

/// count i.i.d. Gamma(1/2, 1) variates (the law of N^2 / 2 for standard normal N).
inline std::vector<double> sample_gamma_half(Rng& rng, std::size_t count) {
  if (count < 1) throw domain_error("sample_gamma_half: count must be at least 1");
  std::vector<double> out(count);
  for (auto& g : out) g = sample_gamma(rng, 0.5);
  return out;
}

/// Beta(a, b) as G_a / (G_a + G_b).
inline double sample_beta(Rng& rng, double a, double b) {
  for (;;) {
    const double ga = sample_gamma(rng, a);
    const double gb = sample_gamma(rng, b);
    const double total = ga + gb;
    if (total > 0.0) return ga / total;
  }
}

/// Dirichlet vector Z_k = G_k / sum_i G_i with G_k ~ Gamma(alpha_k, 1).
inline Vector sample_dirichlet(Rng& rng, const DirichletParams& p) {
  const auto& alpha = p.alpha();
  Vector z(static_cast<Eigen::Index>(alpha.size()));
  for (;;) {
    for (std::size_t k = 0; k < alpha.size(); ++k) z[static_cast<Eigen::Index>(k)] = sample_gamma(rng, alpha[k]);
    const double total = z.sum();
    // All gammas underflowing to zero is possible for tiny shapes; draw again.
    if (total > 0.0) return z / total;
  }
}

/// Uniform point on the sphere from X_k = s_k sqrt(Z_k), with
/// Z ~ Dirichlet(1/2, ..., 1/2) and independent random signs s_k.
inline UnitVector sample_sphere_dirichlet(Rng& rng, Eigen::Index m) {
  if (m < 2) throw domain_error("sample_sphere_dirichlet: dimension must be at least 2");
  const Vector z = sample_dirichlet(rng, DirichletParams::symmetric(static_cast<std::size_t>(m), 0.5));
  Vector x(m);
  for (Eigen::Index k = 0; k < m; ++k) x[k] = rng.rademacher() * std::sqrt(z[k]);
  return UnitVector(std::move(x));
}

/// Uniform point on the sphere as N / |N| for a standard normal vector N.
inline UnitVector sample_sphere_gaussian(Rng& rng, Eigen::Index m) {
  if (m < 2) throw domain_error("sample_sphere_gaussian: dimension must be at least 2");
  Vector v(m);
  for (;;) {
    for (Eigen::Index k = 0; k < m; ++k) v[k] = rng.normal();
    const double norm = v.norm();
    if (norm >= 1e-12) return UnitVector(v / norm);
  }
}

namespace detail {

inline Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  }
  return g;
}

// Thin Q factor of a tall Gaussian matrix with the column signs fixed so that
// diag(R) > 0. Without the sign fix the Householder Q is not Haar distributed.
inline Matrix haar_columns(const Matrix& tall) {
  const Eigen::Index rows = tall.rows();
  const Eigen::Index cols = tall.cols();
  Eigen::HouseholderQR<Matrix> qr(tall);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace detail

/// Haar-uniform d x d orthogonal matrix (QR of a Gaussian matrix, sign-corrected).
inline OrthogonalMatrix sample_haar_orthogonal(Rng& rng, Eigen::Index d) {
  if (d < 1) throw domain_error("sample_haar_orthogonal: dimension must be at least 1");
  return OrthogonalMatrix(detail::haar_columns(detail::gaussian_matrix(rng, d, d)));
}

/// n x m matrix with orthonormal rows, uniform on the Stiefel manifold.
///
/// Equal in law to U * I_{n,m} * V^T for independent Haar U, V but needs only
/// O(n m) memory: it orthonormalizes the columns of an m x n Gaussian matrix.
inline Matrix sample_stiefel_rows(Rng& rng, Eigen::Index n, Eigen::Index m) {
  if (n < 1 || n > m) throw domain_error("sample_stiefel_rows: need 1 <= n <= m");
  return detail::haar_columns(detail::gaussian_matrix(rng, m, n)).transpose();
}

}  // namespace ojl
