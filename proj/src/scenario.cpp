// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/scenario.hpp"

#include <stdexcept>
#include <string>

#include "unlearn_lab/errors.hpp"
#include "unlearn_lab/philox.hpp"

namespace unlearn_lab {

namespace {

enum Stream : std::uint64_t {
  kStreamR = 1,
  kStreamL1 = 2,
  kStreamL2 = 3,
  kStreamF = 4,
  kStreamWStar = 5,
};

double draw(const CounterStream& stream, std::uint64_t index, Distribution dist) {
  return dist == Distribution::kStandardNormal ? stream.normal(index)
                                               : stream.uniform_symmetric(index);
}

// Fills rows [row0, row0 + rows) of `target` with a rows x target.cols()
// block; entry (i, j) uses counter i * cols + j.
void fill_block(Matrix& target, Index row0, Index rows, std::uint64_t seed,
                Stream id, Distribution dist) {
  const CounterStream stream(seed, id);
  const Index cols = target.cols();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      target(row0 + i, j) =
          draw(stream, static_cast<std::uint64_t>(i * cols + j), dist);
    }
  }
}

}  // namespace

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::kStandardNormal:
      return "normal";
    case Distribution::kUniformSymmetric:
      return "uniform";
  }
  return "normal";
}

Distribution distribution_from_string(std::string_view name) {
  if (name == "normal") return Distribution::kStandardNormal;
  if (name == "uniform") return Distribution::kUniformSymmetric;
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "' (expected normal or uniform)");
}

Matrix SyntheticScenario::x_full() const {
  Matrix x(dim(), n_remain() + n_forget());
  x << x_remain, x_forget;
  return x;
}

Vector SyntheticScenario::y_full() const {
  Vector y(n_remain() + n_forget());
  y << y_remain, y_forget;
  return y;
}

SyntheticScenario generate_scenario(Index n_remain, Index n_forget,
                                    FeatureLayout layout, std::uint64_t seed,
                                    Distribution dist) {
  if (layout.remaining_only < 0 || layout.overlap < 0 ||
      layout.forgetting_only < 0) {
    throw std::invalid_argument("feature layout counts must be >= 0");
  }
  if (n_remain < 1 || n_forget < 1) {
    throw std::invalid_argument("n_r and n_f must both be >= 1");
  }
  const Index d = layout.dim();
  if (n_remain + n_forget > d) {
    throw RegimeViolation("n = " + std::to_string(n_remain + n_forget) +
                          " samples exceeds d = " + std::to_string(d) +
                          " features");
  }

  SyntheticScenario s;
  s.layout = layout;
  s.seed = seed;
  s.dist = dist;
  s.x_remain = Matrix::Zero(d, n_remain);
  s.x_forget = Matrix::Zero(d, n_forget);
  fill_block(s.x_remain, 0, layout.remaining_only, seed, kStreamR, dist);
  fill_block(s.x_remain, layout.remaining_end(), layout.overlap, seed,
             kStreamL1, dist);
  fill_block(s.x_forget, layout.remaining_end(), layout.overlap, seed,
             kStreamL2, dist);
  fill_block(s.x_forget, layout.overlap_end(), layout.forgetting_only, seed,
             kStreamF, dist);

  // w_star is always standard normal over all d coordinates.
  const CounterStream w_stream(seed, kStreamWStar);
  s.w_star.resize(d);
  for (Index i = 0; i < d; ++i) {
    s.w_star(i) = w_stream.normal(static_cast<std::uint64_t>(i));
  }
  s.y_remain = s.x_remain.transpose() * s.w_star;
  s.y_forget = s.x_forget.transpose() * s.w_star;
  return s;
}

WStarDecomposition decompose_w_star(const SyntheticScenario& s) {
  const FeatureLayout& l = s.layout;
  const Index d = l.dim();
  WStarDecomposition parts{Vector::Zero(d), Vector::Zero(d), Vector::Zero(d)};
  parts.remaining.head(l.remaining_only) = s.w_star.head(l.remaining_only);
  parts.overlap.segment(l.remaining_end(), l.overlap) =
      s.w_star.segment(l.remaining_end(), l.overlap);
  parts.forgetting.tail(l.forgetting_only) = s.w_star.tail(l.forgetting_only);
  return parts;
}

FineTuneSet fine_tune_subset(const SyntheticScenario& s, Index n_t) {
  if (n_t < 1 || n_t > s.n_remain()) {
    throw std::out_of_range("fine-tune subset size " + std::to_string(n_t) +
                            " outside [1, " + std::to_string(s.n_remain()) +
                            "]");
  }
  return {s.x_remain.leftCols(n_t), s.y_remain.head(n_t)};
}

}  // namespace unlearn_lab
