// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/solvers.hpp"

#include <stdexcept>
#include <string>

#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

std::string_view to_string(EditOption opt) {
  switch (opt) {
    case EditOption::kDistinctZeroForget:
      return "DistinctZeroForget";
    case EditOption::kOverlapRetain:
      return "OverlapRetain";
    case EditOption::kOverlapDiscard:
      return "OverlapDiscard";
  }
  return "?";
}

EditOption edit_option_from_string(std::string_view name) {
  if (name == "DistinctZeroForget") return EditOption::kDistinctZeroForget;
  if (name == "OverlapRetain") return EditOption::kOverlapRetain;
  if (name == "OverlapDiscard") return EditOption::kOverlapDiscard;
  throw std::invalid_argument("unknown edit option '" + std::string(name) + "'");
}

void validate_edit_option(const FeatureLayout& layout, EditOption opt) {
  if (opt == EditOption::kDistinctZeroForget && !layout.is_distinct()) {
    throw LayoutMismatch("DistinctZeroForget requires d_lap = 0 (got " +
                         std::to_string(layout.overlap) + ")");
  }
}

Vector train_original(const SyntheticScenario& s) {
  return min_norm_solve(s.x_full(), s.y_full());
}

Vector fine_tune_unlearn(const Vector& w_o, const Matrix& x_t,
                         const Vector& y_t) {
  return min_norm_anchor_solve(x_t, y_t, w_o);
}

Vector projection_form_unlearn(const Vector& w_o, const Matrix& x_t,
                               const Vector& y_t) {
  if (w_o.size() != x_t.rows()) {
    throw DimensionMismatch("projection_form_unlearn: w_o/X_t size mismatch");
  }
  const Projector p_t = projector(x_t);
  const Vector w_part = min_norm_solve(x_t, y_t);
  return p_t.complement() * w_o + p_t.apply(w_part);
}

Vector retrain_golden(const SyntheticScenario& s) {
  return min_norm_solve(s.x_remain, s.y_remain);
}

Vector edit_pretrained(const Vector& w_o, const FeatureLayout& layout,
                       EditOption opt) {
  if (w_o.size() != layout.dim()) {
    throw LayoutMismatch("edit_pretrained: w_o has " +
                         std::to_string(w_o.size()) + " entries, layout has " +
                         std::to_string(layout.dim()));
  }
  validate_edit_option(layout, opt);
  const Index keep = opt == EditOption::kOverlapRetain ? layout.overlap_end()
                                                       : layout.remaining_end();
  Vector edited = w_o;
  edited.tail(edited.size() - keep).setZero();
  return edited;
}

Vector closed_form_wt_distinct(const SyntheticScenario& s, Index n_t) {
  if (!s.layout.is_distinct()) {
    throw LayoutMismatch("closed_form_wt_distinct requires d_lap = 0");
  }
  const WStarDecomposition parts = decompose_w_star(s);
  const FineTuneSet t = fine_tune_subset(s, n_t);
  const Matrix p = projector(s.x_full()).matrix();
  const Matrix p_t = projector(t.x).matrix();
  return p * parts.remaining + (p - p_t) * parts.forgetting;
}

}  // namespace unlearn_lab
