// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Toy-scale class-wise unlearning with regularized fine-tuning.
//
// Every objective pairs a main term with an alpha-weighted term:
//
//   NaiveFT  CE(remain)
//   KL_FT    CE(remain)          + alpha * KL(onehot(Y_f') || softmax(X_f))
//   CE_FT    CE(X_f, Y_f')       + alpha * CE(remain)
//   ICE_FT   CE(remain)          + alpha * CE(X_f, Y_f')
//
// where Y_f' are deliberately wrong forget labels and CE / KL are batch
// means. Training is deterministic full-batch gradient descent.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "unlearn_lab/metrics.hpp"
#include "unlearn_lab/softmax_model.hpp"

namespace unlearn_lab {

enum class FtVariant { kNaiveFT, kKL_FT, kCE_FT, kICE_FT };
enum class RelabelScheme { kShiftByOne };

std::string_view to_string(FtVariant variant);
FtVariant ft_variant_from_string(std::string_view name);

struct FtConfig {
  FtVariant variant = FtVariant::kNaiveFT;
  double alpha = 0.5;  // ignored by NaiveFT
  int epochs = 500;
  double step_size = 0.1;
  std::uint64_t seed = 0;
  RelabelScheme relabel = RelabelScheme::kShiftByOne;
};

/// alpha must lie in [0, 1] (0 switches the regularizer off), epochs >= 0,
/// step_size > 0. Throws std::invalid_argument.
void validate(const FtConfig& cfg);

struct ClassTask {
  LabeledSet train;
  LabeledSet test;
  Index num_classes = 0;
};

/// Gaussian blobs with unit noise. Class c is centred at
/// (sep / sqrt(2)) * e_c, so every pair of class means is `sep` apart.
/// Samples are stored class-major; the test set has the same size.
ClassTask gen_class_task(Index num_classes, Index per_class, Index feature_dim,
                         double sep, std::uint64_t seed);

/// label -> (label + 1) mod num_classes.
std::vector<int> relabel_forget(const std::vector<int>& labels, int num_classes,
                                RelabelScheme scheme = RelabelScheme::kShiftByOne);

/// Loss and gradient (stored in the same shape as the model).
struct ObjectiveEval {
  double loss = 0.0;
  SoftmaxClassifier gradient;
};

/// Mean cross-entropy against the set's labels.
ObjectiveEval cross_entropy_term(const SoftmaxClassifier& model,
                                 const LabeledSet& set);

/// Mean KL(onehot(labels) || softmax(model, features)).
ObjectiveEval kl_onehot_term(const SoftmaxClassifier& model,
                             const LabeledSet& set);

/// Full fine-tuning objective for `variant`. `forget` must already carry
/// relabeled targets; it is unused by NaiveFT.
ObjectiveEval evaluate_objective(const SoftmaxClassifier& model,
                                 const LabeledSet& remain,
                                 const LabeledSet& forget, FtVariant variant,
                                 double alpha);

struct TrainingTrace {
  std::vector<double> losses;  // objective at the start of each epoch
  double final_step_size = 0.0;
  int restarts = 0;
};

using Objective = std::function<ObjectiveEval(const SoftmaxClassifier&)>;

/// Full-batch gradient descent. On a non-finite loss the run restarts from
/// `initial` with half the step size; after 8 halvings it throws Divergence.
SoftmaxClassifier gradient_descent(const SoftmaxClassifier& initial,
                                   const Objective& objective, int epochs,
                                   double step_size,
                                   TrainingTrace* trace = nullptr);

/// Cross-entropy training from zero parameters for cfg.epochs.
SoftmaxClassifier pretrain(const LabeledSet& train, Index num_classes,
                           const FtConfig& cfg, TrainingTrace* trace = nullptr);

/// Fine-tunes a copy of `model` on the variant's objective.
SoftmaxClassifier unlearn_ft(const SoftmaxClassifier& model,
                             const LabeledSet& remain,
                             const LabeledSet& forget_relabeled,
                             const FtConfig& cfg, TrainingTrace* trace = nullptr);

/// Shape of the class-wise forgetting task used by sweeps.
struct ClassTaskSpec {
  Index num_classes = 5;
  Index per_class = 100;
  Index feature_dim = 20;
  double sep = 5.0;
  int forget_class = 0;
  int pretrain_epochs = 500;
};

void validate(const ClassTaskSpec& spec);

/// Per-seed data, pretrained model and golden (retrained) reference.
struct PreparedTask {
  LabeledSet forget;
  LabeledSet forget_relabeled;
  LabeledSet remain;
  LabeledSet test_remain;  // test samples of the retained classes
  SoftmaxClassifier pretrained;
  SoftmaxClassifier golden;
  Metrics golden_metrics;
};

PreparedTask prepare_task(const ClassTaskSpec& spec, const FtConfig& base,
                          std::uint64_t seed);

struct SweepRow {
  FtVariant variant = FtVariant::kNaiveFT;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  Metrics metrics;
  Metrics golden;
  bool ok = true;
  std::string error;
};

struct SweepAggregate {
  FtVariant variant = FtVariant::kNaiveFT;
  double alpha = 0.0;
  Metrics mean;
  Metrics stddev;  // sample standard deviation; 0 for a single seed
  bool ok = true;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // ordered by variant, alpha, seed
  std::vector<SweepAggregate> aggregates;
};

/// Runs unlearn_ft + classifier_metrics for every (variant, alpha, seed).
/// Per-run divergence is recorded in the row instead of aborting the sweep.
SweepTable alpha_sweep(const ClassTaskSpec& spec,
                       const std::vector<FtVariant>& variants,
                       const std::vector<double>& alphas,
                       const std::vector<std::uint64_t>& seeds,
                       const FtConfig& base, unsigned threads = 1);

}  // namespace unlearn_lab
