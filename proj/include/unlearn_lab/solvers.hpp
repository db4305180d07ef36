// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Training procedures for the linear unlearning pipeline, each solved in
// closed form as a (possibly anchored) minimum-norm interpolant:
//
//   original training   w_o = argmin ||w||        s.t. X^T w   = y
//   fine-tune unlearn   w_t = argmin ||w - w_o||  s.t. X_t^T w = y_t
//   retrain (golden)    w_g = argmin ||w||        s.t. X_r^T w = y_r

#pragma once

#include <string_view>

#include "unlearn_lab/scenario.hpp"

namespace unlearn_lab {

/// How pretrained coordinates tied to the forgetting data are removed
/// before fine-tuning.
enum class EditOption {
  kDistinctZeroForget,  // distinct layouts only: keep [0, d_r)
  kOverlapRetain,       // keep [0, d_r + d_lap)
  kOverlapDiscard,      // keep [0, d_r)
};

std::string_view to_string(EditOption opt);
EditOption edit_option_from_string(std::string_view name);

/// Throws LayoutMismatch if `opt` is not valid for `layout`.
void validate_edit_option(const FeatureLayout& layout, EditOption opt);

Vector train_original(const SyntheticScenario& s);

Vector fine_tune_unlearn(const Vector& w_o, const Matrix& x_t, const Vector& y_t);

/// Second algebraic route to the fine-tuned model:
/// (I - P_t) w_o + P_t w_part, with w_part = min_norm_solve(X_t, y_t).
Vector projection_form_unlearn(const Vector& w_o, const Matrix& x_t,
                               const Vector& y_t);

Vector retrain_golden(const SyntheticScenario& s);

/// Zeroes every coordinate outside the block kept by `opt`. Blocks come
/// from the layout, never from the zero pattern of w_o.
Vector edit_pretrained(const Vector& w_o, const FeatureLayout& layout,
                       EditOption opt);

/// P w_r + (P - P_t) w_f for distinct layouts, with X_t the first n_t
/// remaining samples. Throws LayoutMismatch when d_lap > 0.
Vector closed_form_wt_distinct(const SyntheticScenario& s, Index n_t);

}  // namespace unlearn_lab
