// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment configuration: one JSON document per run.
//
//   {
//     "experiment": "verify-theorems" | "sweep-nt" | "sweep-overlap" |
//                   "classifier-demo" | "sweep-alpha",
//     "seeds": [1, 2, 3],
//     "scenario": {"n_r": 30, "n_f": 10,
//                  "layout": {"d_r": 20, "d_lap": 0, "d_f": 20},
//                  "dist": "normal"},
//     "layouts": [{"d_r": 20, "d_lap": 0, "d_f": 20}, ...],   verify-theorems
//     "n_t": [1, 2, 3] | {"from": 1, "to": 29},
//     "overlap": {"d": 40, "d_lap_values": [0, 4, 8], "n_t": 15},
//     "classifier": {"num_classes": 5, "per_class": 100, "feature_dim": 20,
//                    "sep": 5.0, "forget_class": 0, "pretrain_epochs": 500},
//     "ft": {"variants": ["KL_FT"], "alphas": [0.5], "epochs": 500,
//            "step_size": 0.1},
//     "tolerance": {"rel": 1e-8, "abs_floor": 1e-10},
//     "output_path": "results.csv"
//   }
//
// verify-theorems and sweep-nt require "scenario"; sweep-overlap requires
// "scenario" and "overlap"; the classifier experiments require "ft".
// Everything else inside a section has a default, and to_json() writes
// the fully materialized configuration.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unlearn_lab/discriminative_ft.hpp"
#include "unlearn_lab/metrics.hpp"
#include "unlearn_lab/scenario.hpp"

namespace unlearn_lab {

enum class ExperimentKind {
  kVerifyTheorems,
  kSweepNt,
  kSweepOverlap,
  kClassifierDemo,
  kSweepAlpha,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ScenarioParams {
  Index n_remain = 30;
  Index n_forget = 10;
  FeatureLayout layout{20, 0, 20};
  Distribution dist = Distribution::kStandardNormal;
};

struct OverlapSweepParams {
  Index dim = 40;
  std::vector<Index> d_lap_values{0, 4, 8, 12, 16, 20};
  Index n_t = 15;

  /// d_r = (d - d_lap) / 2, d_f takes the remainder.
  FeatureLayout layout_for(Index d_lap) const;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kVerifyTheorems;
  std::vector<std::uint64_t> seeds;
  ScenarioParams scenario;
  std::vector<FeatureLayout> layouts;  // verify-theorems layout families
  std::vector<Index> n_t_values;       // empty -> 1 .. n_r - 1
  OverlapSweepParams overlap;
  ClassTaskSpec classifier;
  FtConfig ft;
  std::vector<FtVariant> variants;
  std::vector<double> alphas;
  TolerancePolicy tolerance;
  std::optional<std::string> output_path;

  /// n_t_values, or 1 .. n_r - 1 when none were given.
  std::vector<Index> fine_tune_sizes() const;
};

/// Parses and fills defaults. Throws ConfigError on unknown keys, missing
/// required sections or wrong types. Does not check seeds (overrides may
/// still supply them); call validate() afterwards.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Throws ConfigError if the configuration cannot run.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

/// Parses "1,2,3".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace unlearn_lab
