// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

double mse_loss(const Vector& w, const Matrix& x, const Vector& y) {
  if (w.size() != x.rows() || x.cols() != y.size()) {
    throw DimensionMismatch("mse_loss: w is " + std::to_string(w.size()) +
                            ", X is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", y is " +
                            std::to_string(y.size()));
  }
  if (y.size() < 1) throw std::invalid_argument("mse_loss: empty dataset");
  return (x.transpose() * w - y).squaredNorm() / static_cast<double>(y.size());
}

std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::kOriginal:
      return "original";
    case ModelTag::kFineTuned:
      return "fine_tuned";
    case ModelTag::kGolden:
      return "golden";
    case ModelTag::kEditedFineTuned:
      return "edited_fine_tuned";
  }
  return "?";
}

LossReport measure_losses(const Vector& w, const SyntheticScenario& s,
                          ModelTag model, std::optional<Index> n_t) {
  return {mse_loss(w, s.x_remain, s.y_remain), mse_loss(w, s.x_forget, s.y_forget),
          model, provenance_of(s, n_t)};
}

bool TolerancePolicy::accepts(double measured, double predicted) const {
  const double gap = std::abs(measured - predicted);
  return gap <= std::max(abs_floor, rel * std::abs(predicted));
}

FieldGap compare_field(std::string field, double measured, double predicted,
                       const TolerancePolicy& policy) {
  FieldGap g;
  g.field = std::move(field);
  g.measured = measured;
  g.predicted = predicted;
  g.abs_gap = std::abs(measured - predicted);
  if (predicted != 0.0) {
    g.rel_gap = g.abs_gap / std::abs(predicted);
  } else {
    g.rel_gap = g.abs_gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  g.pass = policy.accepts(measured, predicted);
  return g;
}

bool GapReport::pass() const {
  return std::all_of(fields.begin(), fields.end(),
                     [](const FieldGap& g) { return g.pass; });
}

GapReport gap_report(const LossReport& measured,
                     const TheoremPrediction& predicted,
                     const TolerancePolicy& policy) {
  const Provenance& a = measured.provenance;
  const Provenance& b = predicted.provenance;
  // A prediction without n_t (golden-only) matches any fine-tune size.
  const bool n_t_ok = !b.n_t.has_value() || a.n_t == b.n_t;
  if (a.seed != b.seed || !(a.layout == b.layout) || !n_t_ok) {
    throw ProvenanceMismatch("gap_report: measurement and prediction come "
                             "from different scenarios");
  }
  GapReport report;
  switch (measured.model) {
    case ModelTag::kFineTuned:
      report.fields.push_back(compare_field("rl_ft", measured.rl, predicted.rl_ft, policy));
      report.fields.push_back(compare_field("ul_ft", measured.ul, predicted.ul_ft, policy));
      break;
    case ModelTag::kGolden:
      report.fields.push_back(compare_field("rl_gold", measured.rl, predicted.rl_gold, policy));
      report.fields.push_back(compare_field("ul_gold", measured.ul, predicted.ul_gold, policy));
      break;
    case ModelTag::kEditedFineTuned:
      if (!predicted.rl_edit || !predicted.ul_edit) {
        throw ProvenanceMismatch("gap_report: prediction has no edited-model fields");
      }
      report.fields.push_back(compare_field("rl_edit", measured.rl, *predicted.rl_edit, policy));
      report.fields.push_back(compare_field("ul_edit", measured.ul, *predicted.ul_edit, policy));
      break;
    case ModelTag::kOriginal:
      throw ProvenanceMismatch("gap_report: no prediction exists for the original model");
  }
  return report;
}

double accuracy(const SoftmaxClassifier& model, const LabeledSet& set) {
  validate_set(set, model.num_classes());
  const std::vector<int> predicted = predict(model, set.features);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == set.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

Metrics classifier_metrics(const SoftmaxClassifier& model,
                           const LabeledSet& forget_set,
                           const LabeledSet& remain_set,
                           const LabeledSet& test_set) {
  Metrics m;
  m.ua = 1.0 - accuracy(model, forget_set);
  m.ra = accuracy(model, remain_set);
  m.ta = accuracy(model, test_set);
  return m;
}

}  // namespace unlearn_lab
