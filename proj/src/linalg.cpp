// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

namespace {

void require_finite(const Matrix& a, const char* what) {
  if (!all_finite(a)) {
    throw InvalidMatrix(std::string(what) + ": non-finite entry");
  }
}

// Retained-rank triple (U_r, S_r, V_r) of a matrix.
struct Truncated {
  SvdResult full;
  Index rank;
};

Truncated truncated_svd(const Matrix& a, std::optional<double> sv_cutoff) {
  Truncated t{svd(a), 0};
  const double sigma_max = t.full.s.size() > 0 ? t.full.s(0) : 0.0;
  const double cutoff =
      sv_cutoff.value_or(default_sv_cutoff(a.rows(), a.cols(), sigma_max));
  if (cutoff < 0.0) {
    throw std::invalid_argument("singular value cutoff must be >= 0");
  }
  t.rank = numerical_rank(t.full.s, cutoff);
  return t;
}

}  // namespace

bool all_finite(const Matrix& a) { return a.allFinite(); }

double consistency_tolerance(const Vector& y) {
  return tol::kConsistencyRel * (1.0 + y.norm());
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  const Index k = std::min(a.rows(), a.cols());
  if (k == 0) {
    return {Matrix(a.rows(), 0), Vector(0), Matrix(a.cols(), 0)};
  }
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw SvdFailure("svd: Jacobi iteration did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double default_sv_cutoff(Index rows, Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

Index numerical_rank(const Vector& singular_values, double cutoff) {
  Index r = 0;
  // Values equal to the cutoff are dropped.
  while (r < singular_values.size() && singular_values(r) > cutoff) ++r;
  return r;
}

Matrix pseudoinverse(const Matrix& a, std::optional<double> sv_cutoff) {
  const Truncated t = truncated_svd(a, sv_cutoff);
  const Index r = t.rank;
  const Vector inv_s = t.full.s.head(r).cwiseInverse();
  return t.full.v.leftCols(r) * inv_s.asDiagonal() *
         t.full.u.leftCols(r).transpose();
}

Projector Projector::onto_columns(const Matrix& x,
                                  std::optional<double> sv_cutoff) {
  const Truncated t = truncated_svd(x, sv_cutoff);
  const auto basis = t.full.u.leftCols(t.rank);
  Matrix p = basis * basis.transpose();
  if (t.rank == 0) p = Matrix::Zero(x.rows(), x.rows());
  return Projector(std::move(p), t.rank);
}

Matrix Projector::complement() const {
  return Matrix::Identity(dim(), dim()) - matrix_;
}

Vector min_norm_solve(const Matrix& x, const Vector& y) {
  if (x.cols() != y.size()) {
    throw DimensionMismatch("min_norm_solve: X has " +
                            std::to_string(x.cols()) + " columns, y has " +
                            std::to_string(y.size()) + " entries");
  }
  require_finite(y, "min_norm_solve");
  const Truncated t = truncated_svd(x, std::nullopt);
  const Index r = t.rank;
  if (r < std::min(x.rows(), x.cols())) {
    spdlog::debug("min_norm_solve: rank-deficient {}x{} system (rank {})",
                  x.rows(), x.cols(), r);
  }
  // X = U S V^T, so (X^T)^+ = U S^-1 V^T.
  const Vector coeffs =
      (t.full.v.leftCols(r).transpose() * y).cwiseQuotient(t.full.s.head(r));
  Vector w = t.full.u.leftCols(r) * coeffs;

  const double residual = (x.transpose() * w - y).norm();
  const double limit = consistency_tolerance(y);
  if (!(residual <= limit)) {
    throw InconsistentSystem("min_norm_solve: residual " +
                             std::to_string(residual) + " exceeds " +
                             std::to_string(limit));
  }
  return w;
}

Vector min_norm_anchor_solve(const Matrix& x, const Vector& y,
                             const Vector& anchor) {
  if (anchor.size() != x.rows()) {
    throw DimensionMismatch("min_norm_anchor_solve: anchor has " +
                            std::to_string(anchor.size()) + " entries, X has " +
                            std::to_string(x.rows()) + " rows");
  }
  require_finite(anchor, "min_norm_anchor_solve");
  const Vector shift = min_norm_solve(x, y - x.transpose() * anchor);
  return anchor + shift;
}

double weighted_seminorm_sq(const Vector& v, const Matrix& x, Index n) {
  if (v.size() != x.rows()) {
    throw DimensionMismatch("weighted_seminorm_sq: v has " +
                            std::to_string(v.size()) + " entries, X has " +
                            std::to_string(x.rows()) + " rows");
  }
  if (n < 1) throw std::invalid_argument("weighted_seminorm_sq: n must be >= 1");
  return (x.transpose() * v).squaredNorm() / static_cast<double>(n);
}

}  // namespace unlearn_lab
