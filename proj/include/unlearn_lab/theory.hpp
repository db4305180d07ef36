// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form predictions of remaining loss (RL) and unlearning loss (UL)
// for the fine-tuned, golden and edited-then-fine-tuned linear models.
//
// All losses are MSE with a 1/|D| factor, so every prediction is a
// weighted seminorm ||v||^2 in (1/n_f) X_f X_f^T or (1/n_r) X_r X_r^T.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "unlearn_lab/scenario.hpp"
#include "unlearn_lab/solvers.hpp"

namespace unlearn_lab {

enum class TheoremTag { kT1, kT2, kT3Distinct, kT3A, kT3B };

std::string_view to_string(TheoremTag tag);

/// Which scenario (and fine-tune size) a prediction or measurement
/// belongs to.
struct Provenance {
  std::uint64_t seed = 0;
  FeatureLayout layout;
  std::optional<Index> n_t;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

Provenance provenance_of(const SyntheticScenario& s,
                         std::optional<Index> n_t = std::nullopt);

struct TheoremPrediction {
  double rl_ft = 0.0;
  double ul_ft = 0.0;
  double rl_gold = 0.0;
  double ul_gold = 0.0;
  TheoremTag tag = TheoremTag::kT1;
  std::optional<double> rl_edit;
  std::optional<double> ul_edit;
  Provenance provenance;
};

/// Distinct features: UL_gold = ||w_f||^2 in (1/n_f) X_f X_f^T.
/// Throws LayoutMismatch if d_lap != 0.
TheoremPrediction predict_thm1(const SyntheticScenario& s);

/// Any layout: UL_gold = ||P_r (w_r + w_lap) - (w_f + w_lap)||^2 in
/// (1/n_f) X_f X_f^T.
TheoremPrediction predict_thm2(const SyntheticScenario& s);

/// UL_gold of the overlap theorem evaluated through the block expansion
/// X_f^T P_r = [0, L2^T L1 G^+ R^T, L2^T L1 G^+ L1^T, 0] with
/// G = R^T R + L1^T L1, never forming P_r itself.
double golden_ul_block_expansion(const SyntheticScenario& s);

/// Edited-pretrained predictions. rl_gold/ul_gold carry the overlap-theorem
/// golden values; rl_edit/ul_edit depend on `opt` (and on n_t for
/// OverlapDiscard). The OverlapRetain / OverlapDiscard forms assume the
/// remaining data span the first d_r + d_lap coordinates.
TheoremPrediction predict_thm3(const SyntheticScenario& s, EditOption opt,
                               Index n_t);

}  // namespace unlearn_lab
