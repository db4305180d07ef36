// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic over-parameterized regression scenarios.
//
// Feature coordinates are laid out as three contiguous blocks:
//
//   [0, d_r)               remaining-only features
//   [d_r, d_r + d_lap)     features shared by both subsets
//   [d_r + d_lap, d)       forgetting-only features
//
// so X_r^T = [R^T, L1^T, 0] and X_f^T = [0, L2^T, F^T].

#pragma once

#include <cstdint>
#include <string_view>

#include "unlearn_lab/linalg.hpp"

namespace unlearn_lab {

struct FeatureLayout {
  Index remaining_only = 0;
  Index overlap = 0;
  Index forgetting_only = 0;

  Index dim() const { return remaining_only + overlap + forgetting_only; }
  Index remaining_end() const { return remaining_only; }
  Index overlap_end() const { return remaining_only + overlap; }
  bool is_distinct() const { return overlap == 0; }

  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

enum class Distribution { kStandardNormal, kUniformSymmetric };

std::string_view to_string(Distribution dist);
Distribution distribution_from_string(std::string_view name);

struct SyntheticScenario {
  FeatureLayout layout;
  Matrix x_remain;  // d x n_r
  Matrix x_forget;  // d x n_f
  Vector y_remain;
  Vector y_forget;
  Vector w_star;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::kStandardNormal;

  Index dim() const { return layout.dim(); }
  Index n_remain() const { return x_remain.cols(); }
  Index n_forget() const { return x_forget.cols(); }

  /// [X_r | X_f], remaining samples first.
  Matrix x_full() const;
  Vector y_full() const;
};

struct WStarDecomposition {
  Vector remaining;
  Vector overlap;
  Vector forgetting;
};

/// Blocks R, L1, L2, F and w_star each come from their own named stream.
/// Throws RegimeViolation when n_r + n_f > d.
SyntheticScenario generate_scenario(
    Index n_remain, Index n_forget, FeatureLayout layout, std::uint64_t seed,
    Distribution dist = Distribution::kStandardNormal);

WStarDecomposition decompose_w_star(const SyntheticScenario& s);

struct FineTuneSet {
  Matrix x;
  Vector y;
};

/// First n_t remaining samples, in order.
FineTuneSet fine_tune_subset(const SyntheticScenario& s, Index n_t);

}  // namespace unlearn_lab
