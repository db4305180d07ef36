// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "unlearn_lab/linalg.hpp"

namespace unlearn_lab {

/// Multiclass linear softmax model: logits = W x + b.
struct SoftmaxClassifier {
  Matrix weights;  // num_classes x feature_dim
  Vector bias;     // num_classes

  static SoftmaxClassifier zeros(Index num_classes, Index feature_dim);

  Index num_classes() const { return weights.rows(); }
  Index feature_dim() const { return weights.cols(); }
};

/// Samples as columns (feature_dim x m) with integer class ids.
struct LabeledSet {
  Matrix features;
  std::vector<int> labels;

  Index size() const { return features.cols(); }
};

/// Throws std::invalid_argument on empty sets, label/column count
/// mismatch or labels outside [0, num_classes).
void validate_set(const LabeledSet& set, Index num_classes);

/// num_classes x m logits.
Matrix logits(const SoftmaxClassifier& model, const Matrix& features);

/// Column-wise softmax of a logit matrix, max-shifted for stability.
Matrix softmax_columns(const Matrix& logit_matrix);

/// Column-wise log-softmax.
Matrix log_softmax_columns(const Matrix& logit_matrix);

/// Argmax per column; ties go to the lowest class index.
std::vector<int> predict(const SoftmaxClassifier& model, const Matrix& features);

/// Subset of samples whose label is (or is not) `cls`.
LabeledSet select_class(const LabeledSet& set, int cls, bool keep);

}  // namespace unlearn_lab
