// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/softmax_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace unlearn_lab {

SoftmaxClassifier SoftmaxClassifier::zeros(Index num_classes, Index feature_dim) {
  return {Matrix::Zero(num_classes, feature_dim), Vector::Zero(num_classes)};
}

void validate_set(const LabeledSet& set, Index num_classes) {
  if (set.size() < 1) throw std::invalid_argument("labeled set is empty");
  if (static_cast<Index>(set.labels.size()) != set.size()) {
    throw std::invalid_argument("labeled set has " +
                                std::to_string(set.labels.size()) +
                                " labels for " + std::to_string(set.size()) +
                                " samples");
  }
  for (int label : set.labels) {
    if (label < 0 || label >= num_classes) {
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " outside [0, " + std::to_string(num_classes) +
                                  ")");
    }
  }
}

Matrix logits(const SoftmaxClassifier& model, const Matrix& features) {
  Matrix z = model.weights * features;
  z.colwise() += model.bias;
  return z;
}

Matrix log_softmax_columns(const Matrix& logit_matrix) {
  Matrix out(logit_matrix.rows(), logit_matrix.cols());
  for (Index j = 0; j < logit_matrix.cols(); ++j) {
    const auto col = logit_matrix.col(j);
    const double shift = col.maxCoeff();
    const double log_norm = std::log((col.array() - shift).exp().sum()) + shift;
    out.col(j) = col.array() - log_norm;
  }
  return out;
}

Matrix softmax_columns(const Matrix& logit_matrix) {
  Matrix out(logit_matrix.rows(), logit_matrix.cols());
  for (Index j = 0; j < logit_matrix.cols(); ++j) {
    const auto col = logit_matrix.col(j);
    const Eigen::ArrayXd e = (col.array() - col.maxCoeff()).exp();
    out.col(j) = e / e.sum();
  }
  return out;
}

std::vector<int> predict(const SoftmaxClassifier& model, const Matrix& features) {
  const Matrix z = logits(model, features);
  std::vector<int> out(static_cast<std::size_t>(z.cols()));
  for (Index j = 0; j < z.cols(); ++j) {
    Index best = 0;
    for (Index k = 1; k < z.rows(); ++k) {
      if (z(k, j) > z(best, j)) best = k;
    }
    out[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return out;
}

LabeledSet select_class(const LabeledSet& set, int cls, bool keep) {
  std::vector<Index> idx;
  for (Index j = 0; j < set.size(); ++j) {
    if ((set.labels[static_cast<std::size_t>(j)] == cls) == keep) idx.push_back(j);
  }
  LabeledSet out;
  out.features.resize(set.features.rows(), static_cast<Index>(idx.size()));
  out.labels.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.features.col(static_cast<Index>(k)) = set.features.col(idx[k]);
    out.labels.push_back(set.labels[static_cast<std::size_t>(idx[k])]);
  }
  return out;
}

}  // namespace unlearn_lab
