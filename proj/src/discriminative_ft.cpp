// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/discriminative_ft.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unlearn_lab/errors.hpp"
#include "unlearn_lab/parallel.hpp"
#include "unlearn_lab/philox.hpp"

namespace unlearn_lab {

namespace {

constexpr std::uint64_t kTrainNoiseStream = 11;
constexpr std::uint64_t kTestNoiseStream = 12;
constexpr int kMaxHalvings = 8;

bool is_finite(const SoftmaxClassifier& m) {
  return m.weights.allFinite() && m.bias.allFinite();
}

// Shared gradient of any mean loss whose logit derivative is (P - T) / m.
SoftmaxClassifier logit_gradient(const Matrix& probs, const Matrix& targets,
                                 const Matrix& features) {
  const double m = static_cast<double>(features.cols());
  const Matrix dz = (probs - targets) / m;
  return {dz * features.transpose(), dz.rowwise().sum()};
}

Matrix one_hot(const std::vector<int>& labels, Index num_classes) {
  Matrix t = Matrix::Zero(num_classes, static_cast<Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    t(labels[j], static_cast<Index>(j)) = 1.0;
  }
  return t;
}

ObjectiveEval combine(ObjectiveEval main, const ObjectiveEval& reg, double alpha) {
  main.loss = main.loss + alpha * reg.loss;
  main.gradient.weights += alpha * reg.gradient.weights;
  main.gradient.bias += alpha * reg.gradient.bias;
  return main;
}

LabeledSet blobs(Index num_classes, Index per_class, Index feature_dim,
                 double sep, const CounterStream& noise) {
  LabeledSet set;
  set.features.resize(feature_dim, num_classes * per_class);
  set.labels.reserve(static_cast<std::size_t>(num_classes * per_class));
  const double offset = sep / std::sqrt(2.0);
  for (Index c = 0; c < num_classes; ++c) {
    for (Index i = 0; i < per_class; ++i) {
      const Index j = c * per_class + i;
      for (Index f = 0; f < feature_dim; ++f) {
        set.features(f, j) = noise.normal(static_cast<std::uint64_t>(j * feature_dim + f));
      }
      set.features(c, j) += offset;
      set.labels.push_back(static_cast<int>(c));
    }
  }
  return set;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string_view to_string(FtVariant variant) {
  switch (variant) {
    case FtVariant::kNaiveFT:
      return "NaiveFT";
    case FtVariant::kKL_FT:
      return "KL_FT";
    case FtVariant::kCE_FT:
      return "CE_FT";
    case FtVariant::kICE_FT:
      return "ICE_FT";
  }
  return "?";
}

FtVariant ft_variant_from_string(std::string_view name) {
  if (name == "NaiveFT") return FtVariant::kNaiveFT;
  if (name == "KL_FT") return FtVariant::kKL_FT;
  if (name == "CE_FT") return FtVariant::kCE_FT;
  if (name == "ICE_FT") return FtVariant::kICE_FT;
  throw std::invalid_argument("unknown fine-tuning variant '" + std::string(name) +
                              "' (expected NaiveFT, KL_FT, CE_FT or ICE_FT)");
}

void validate(const FtConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (cfg.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (!(cfg.step_size > 0.0)) throw std::invalid_argument("step_size must be > 0");
}

ClassTask gen_class_task(Index num_classes, Index per_class, Index feature_dim,
                         double sep, std::uint64_t seed) {
  if (num_classes < 2) throw std::invalid_argument("num_classes must be >= 2");
  if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
  if (feature_dim < num_classes) {
    throw std::invalid_argument("feature_dim must be >= num_classes");
  }
  if (!(sep > 0.0)) throw std::invalid_argument("sep must be > 0");
  return {blobs(num_classes, per_class, feature_dim, sep,
                CounterStream(seed, kTrainNoiseStream)),
          blobs(num_classes, per_class, feature_dim, sep,
                CounterStream(seed, kTestNoiseStream)),
          num_classes};
}

std::vector<int> relabel_forget(const std::vector<int>& labels, int num_classes,
                                RelabelScheme scheme) {
  if (num_classes < 2) {
    throw std::invalid_argument("relabeling needs at least 2 classes");
  }
  std::vector<int> out;
  out.reserve(labels.size());
  switch (scheme) {
    case RelabelScheme::kShiftByOne:
      for (int label : labels) {
        if (label < 0 || label >= num_classes) {
          throw std::invalid_argument("label " + std::to_string(label) +
                                      " outside [0, num_classes)");
        }
        out.push_back((label + 1) % num_classes);
      }
      break;
  }
  return out;
}

ObjectiveEval cross_entropy_term(const SoftmaxClassifier& model,
                                 const LabeledSet& set) {
  validate_set(set, model.num_classes());
  const Matrix log_probs = log_softmax_columns(logits(model, set.features));
  double loss = 0.0;
  for (Index j = 0; j < set.size(); ++j) {
    loss -= log_probs(set.labels[static_cast<std::size_t>(j)], j);
  }
  loss /= static_cast<double>(set.size());
  return {loss, logit_gradient(log_probs.array().exp().matrix(),
                               one_hot(set.labels, model.num_classes()),
                               set.features)};
}

ObjectiveEval kl_onehot_term(const SoftmaxClassifier& model,
                             const LabeledSet& set) {
  validate_set(set, model.num_classes());
  const Matrix log_probs = log_softmax_columns(logits(model, set.features));
  const Matrix target = one_hot(set.labels, model.num_classes());
  double loss = 0.0;
  for (Index j = 0; j < target.cols(); ++j) {
    for (Index k = 0; k < target.rows(); ++k) {
      const double t = target(k, j);
      if (t > 0.0) loss += t * (std::log(t) - log_probs(k, j));
    }
  }
  loss /= static_cast<double>(set.size());
  // Targets sum to one per column, so d/dz KL = softmax - target.
  return {loss, logit_gradient(log_probs.array().exp().matrix(), target,
                               set.features)};
}

ObjectiveEval evaluate_objective(const SoftmaxClassifier& model,
                                 const LabeledSet& remain,
                                 const LabeledSet& forget, FtVariant variant,
                                 double alpha) {
  switch (variant) {
    case FtVariant::kNaiveFT:
      return cross_entropy_term(model, remain);
    case FtVariant::kKL_FT:
      return combine(cross_entropy_term(model, remain),
                     kl_onehot_term(model, forget), alpha);
    case FtVariant::kCE_FT:
      return combine(cross_entropy_term(model, forget),
                     cross_entropy_term(model, remain), alpha);
    case FtVariant::kICE_FT:
      return combine(cross_entropy_term(model, remain),
                     cross_entropy_term(model, forget), alpha);
  }
  throw std::invalid_argument("unknown variant");
}

SoftmaxClassifier gradient_descent(const SoftmaxClassifier& initial,
                                   const Objective& objective, int epochs,
                                   double step_size, TrainingTrace* trace) {
  double step = step_size;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt, step *= 0.5) {
    SoftmaxClassifier model = initial;
    std::vector<double> losses;
    losses.reserve(static_cast<std::size_t>(epochs));
    bool diverged = false;
    for (int epoch = 0; epoch < epochs; ++epoch) {
      const ObjectiveEval eval = objective(model);
      if (!std::isfinite(eval.loss) || !is_finite(eval.gradient)) {
        diverged = true;
        break;
      }
      losses.push_back(eval.loss);
      model.weights -= step * eval.gradient.weights;
      model.bias -= step * eval.gradient.bias;
    }
    if (!diverged && is_finite(model)) {
      if (trace != nullptr) {
        trace->losses = std::move(losses);
        trace->final_step_size = step;
        trace->restarts = attempt;
      }
      return model;
    }
  }
  throw Divergence("gradient descent diverged even at step size " +
                   std::to_string(step_size / (1 << kMaxHalvings)) +
                   "; try a smaller step_size");
}

SoftmaxClassifier pretrain(const LabeledSet& train, Index num_classes,
                           const FtConfig& cfg, TrainingTrace* trace) {
  validate(cfg);
  validate_set(train, num_classes);
  const auto zero = SoftmaxClassifier::zeros(num_classes, train.features.rows());
  return gradient_descent(
      zero, [&](const SoftmaxClassifier& m) { return cross_entropy_term(m, train); },
      cfg.epochs, cfg.step_size, trace);
}

SoftmaxClassifier unlearn_ft(const SoftmaxClassifier& model,
                             const LabeledSet& remain,
                             const LabeledSet& forget_relabeled,
                             const FtConfig& cfg, TrainingTrace* trace) {
  validate(cfg);
  validate_set(remain, model.num_classes());
  if (cfg.variant != FtVariant::kNaiveFT) {
    validate_set(forget_relabeled, model.num_classes());
  }
  return gradient_descent(
      model,
      [&](const SoftmaxClassifier& m) {
        return evaluate_objective(m, remain, forget_relabeled, cfg.variant, cfg.alpha);
      },
      cfg.epochs, cfg.step_size, trace);
}

void validate(const ClassTaskSpec& spec) {
  if (spec.forget_class < 0 || spec.forget_class >= spec.num_classes) {
    throw std::invalid_argument("forget_class outside [0, num_classes)");
  }
  if (spec.pretrain_epochs < 0) {
    throw std::invalid_argument("pretrain_epochs must be >= 0");
  }
}

PreparedTask prepare_task(const ClassTaskSpec& spec, const FtConfig& base,
                          std::uint64_t seed) {
  validate(spec);
  const ClassTask task = gen_class_task(spec.num_classes, spec.per_class,
                                        spec.feature_dim, spec.sep, seed);
  const int num_classes = static_cast<int>(spec.num_classes);
  PreparedTask p;
  p.forget = select_class(task.train, spec.forget_class, true);
  p.remain = select_class(task.train, spec.forget_class, false);
  p.test_remain = select_class(task.test, spec.forget_class, false);
  p.forget_relabeled = p.forget;
  p.forget_relabeled.labels = relabel_forget(p.forget.labels, num_classes, base.relabel);

  FtConfig train_cfg = base;
  train_cfg.epochs = spec.pretrain_epochs;
  p.pretrained = pretrain(task.train, spec.num_classes, train_cfg);
  p.golden = pretrain(p.remain, spec.num_classes, train_cfg);
  p.golden_metrics = classifier_metrics(p.golden, p.forget, p.remain, p.test_remain);
  return p;
}

SweepTable alpha_sweep(const ClassTaskSpec& spec,
                       const std::vector<FtVariant>& variants,
                       const std::vector<double>& alphas,
                       const std::vector<std::uint64_t>& seeds,
                       const FtConfig& base, unsigned threads) {
  if (variants.empty() || alphas.empty() || seeds.empty()) {
    throw std::invalid_argument("alpha_sweep needs non-empty variants, alphas and seeds");
  }
  validate(spec);
  for (double alpha : alphas) {
    FtConfig probe = base;
    probe.alpha = alpha;
    validate(probe);
  }

  const std::size_t per_seed = variants.size() * alphas.size();
  SweepTable table;
  table.rows.resize(per_seed * seeds.size());
  auto slot = [&](std::size_t v, std::size_t a, std::size_t s) -> SweepRow& {
    return table.rows[(v * alphas.size() + a) * seeds.size() + s];
  };

  parallel_for(seeds.size(), threads, [&](std::size_t s) {
    const PreparedTask task = prepare_task(spec, base, seeds[s]);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        SweepRow& row = slot(v, a, s);
        row.variant = variants[v];
        row.alpha = alphas[a];
        row.seed = seeds[s];
        row.golden = task.golden_metrics;
        FtConfig cfg = base;
        cfg.variant = variants[v];
        cfg.alpha = alphas[a];
        try {
          const auto start = std::chrono::steady_clock::now();
          const SoftmaxClassifier model =
              unlearn_ft(task.pretrained, task.remain, task.forget_relabeled, cfg);
          const auto stop = std::chrono::steady_clock::now();
          row.metrics = classifier_metrics(model, task.forget, task.remain,
                                           task.test_remain);
          row.metrics.runtime_seconds =
              std::chrono::duration<double>(stop - start).count();
        } catch (const Divergence& e) {
          row.ok = false;
          row.error = e.what();
          const double nan = std::numeric_limits<double>::quiet_NaN();
          row.metrics = {nan, nan, nan, nan};
        }
      }
    }
  });

  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      std::vector<double> ua, ra, ta, rt;
      SweepAggregate agg;
      agg.variant = variants[v];
      agg.alpha = alphas[a];
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const SweepRow& row = slot(v, a, s);
        agg.ok = agg.ok && row.ok;
        ua.push_back(row.metrics.ua);
        ra.push_back(row.metrics.ra);
        ta.push_back(row.metrics.ta);
        rt.push_back(row.metrics.runtime_seconds);
      }
      agg.mean = {mean_of(ua), mean_of(ra), mean_of(ta), mean_of(rt)};
      agg.stddev = {sample_std(ua), sample_std(ra), sample_std(ta), sample_std(rt)};
      table.aggregates.push_back(agg);
    }
  }
  return table;
}

}  // namespace unlearn_lab
