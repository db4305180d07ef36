// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Direct loss measurement for the linear pipeline, gap reporting against
// closed-form predictions, and UA/RA/TA for the classifier pipeline.
// The two metric families are kept separate: LossReport holds MSE values,
// Metrics holds 0/1 accuracies.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unlearn_lab/softmax_model.hpp"
#include "unlearn_lab/theory.hpp"

namespace unlearn_lab {

/// (1/|D|) ||X^T w - y||^2.
double mse_loss(const Vector& w, const Matrix& x, const Vector& y);

enum class ModelTag { kOriginal, kFineTuned, kGolden, kEditedFineTuned };

std::string_view to_string(ModelTag tag);

struct LossReport {
  double rl = 0.0;
  double ul = 0.0;
  ModelTag model = ModelTag::kOriginal;
  Provenance provenance;
};

LossReport measure_losses(const Vector& w, const SyntheticScenario& s,
                          ModelTag model, std::optional<Index> n_t = std::nullopt);

/// A measured value passes when |measured - predicted| <=
/// max(abs_floor, rel * |predicted|).
struct TolerancePolicy {
  double rel = 1e-8;
  double abs_floor = 1e-10;

  bool accepts(double measured, double predicted) const;
};

struct FieldGap {
  std::string field;
  double measured = 0.0;
  double predicted = 0.0;
  double abs_gap = 0.0;
  /// abs_gap / |predicted|; 0 when both agree exactly and +inf when the
  /// prediction is 0 but the measurement is not.
  double rel_gap = 0.0;
  bool pass = false;
};

FieldGap compare_field(std::string field, double measured, double predicted,
                       const TolerancePolicy& policy = {});

struct GapReport {
  std::vector<FieldGap> fields;

  bool pass() const;
};

/// Compares the RL/UL fields matching `measured.model` (fine_tuned ->
/// rl_ft/ul_ft, golden -> rl_gold/ul_gold, edited_fine_tuned ->
/// rl_edit/ul_edit). Throws ProvenanceMismatch if the scenarios differ or
/// the prediction has no field for that model.
GapReport gap_report(const LossReport& measured,
                     const TheoremPrediction& predicted,
                     const TolerancePolicy& policy = {});

struct Metrics {
  double ua = 0.0;
  double ra = 0.0;
  double ta = 0.0;
  double runtime_seconds = 0.0;
};

/// Fraction of argmax-correct predictions. Throws on an empty set.
double accuracy(const SoftmaxClassifier& model, const LabeledSet& set);

/// ua = 1 - acc(forget), ra = acc(remain), ta = acc(test).
Metrics classifier_metrics(const SoftmaxClassifier& model,
                           const LabeledSet& forget_set,
                           const LabeledSet& remain_set,
                           const LabeledSet& test_set);

}  // namespace unlearn_lab
