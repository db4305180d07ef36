// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Dense linear-algebra kernels shared by the regression pipeline.
//
// Data matrices follow the column-sample convention: a d x n matrix holds
// n samples of dimension d, and a linear model w predicts X^T w.

#pragma once

#include <optional>

#include <Eigen/Dense>

namespace unlearn_lab {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
inline constexpr double kSymmetry = 1e-10;
inline constexpr double kIdempotence = 1e-10;
inline constexpr double kConsistencyRel = 1e-8;
}  // namespace tol

/// Residual allowed before a linear system counts as inconsistent:
/// 1e-8 * (1 + ||y||).
double consistency_tolerance(const Vector& y);

/// Thin SVD: u is rows x k, v is cols x k with k = min(rows, cols);
/// singular values are sorted in descending order.
struct SvdResult {
  Matrix u;
  Vector s;
  Matrix v;
};

SvdResult svd(const Matrix& a);

/// max(rows, cols) * eps * sigma_max.
double default_sv_cutoff(Index rows, Index cols, double sigma_max);

/// Number of singular values strictly above the cutoff.
Index numerical_rank(const Vector& singular_values, double cutoff);

Matrix pseudoinverse(const Matrix& a,
                     std::optional<double> sv_cutoff = std::nullopt);

/// Orthogonal projector onto a column space, built from the retained left
/// singular vectors (U_r U_r^T).
class Projector {
 public:
  static Projector onto_columns(const Matrix& x,
                                std::optional<double> sv_cutoff = std::nullopt);

  Index dim() const { return matrix_.rows(); }
  Index rank() const { return rank_; }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& v) const { return matrix_ * v; }
  /// I - P, the projector onto the orthogonal complement.
  Matrix complement() const;

 private:
  Projector(Matrix m, Index rank) : matrix_(std::move(m)), rank_(rank) {}

  Matrix matrix_;
  Index rank_;
};

inline Projector projector(const Matrix& x,
                           std::optional<double> sv_cutoff = std::nullopt) {
  return Projector::onto_columns(x, sv_cutoff);
}

/// Minimum-norm w with X^T w = y, i.e. (X^T)^+ y.
/// Throws InconsistentSystem if the least-squares residual exceeds
/// consistency_tolerance(y).
Vector min_norm_solve(const Matrix& x, const Vector& y);

/// argmin ||w - anchor|| subject to X^T w = y:
/// anchor + (X^T)^+ (y - X^T anchor).
Vector min_norm_anchor_solve(const Matrix& x, const Vector& y,
                             const Vector& anchor);

/// ||v||^2 in the seminorm induced by (1/n) X X^T, i.e. (1/n) ||X^T v||^2.
double weighted_seminorm_sq(const Vector& v, const Matrix& x, Index n);

bool all_finite(const Matrix& a);

}  // namespace unlearn_lab
