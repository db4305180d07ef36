// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment runner behind the unlearn-lab CLI. Every experiment produces a
// table with a fixed, versioned column list; runtime_seconds is always the
// last column so output can be compared byte-for-byte without it.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unlearn_lab/config.hpp"

namespace unlearn_lab {

inline constexpr int kCsvSchemaVersion = 1;

/// Column names for an experiment kind, in output order.
std::span<const std::string_view> csv_columns(ExperimentKind kind);

struct ResultTable {
  ExperimentKind experiment = ExperimentKind::kVerifyTheorems;
  std::vector<std::vector<std::string>> rows;  // already formatted cells
  std::size_t failed_rows = 0;
  std::vector<std::string> errors;  // numerical failures recorded per row
  nlohmann::json notes = nlohmann::json::object();
  double runtime_seconds = 0.0;

  bool pass() const { return failed_rows == 0; }
};

/// Runs the configured experiment. Work is spread over `threads` workers
/// but rows are always emitted in (layout, seed, n_t) or (variant, alpha,
/// seed) order. Throws ConfigError if `cfg` does not validate.
ResultTable run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

/// Two comment lines (schema and materialized config), the header and the
/// rows.
std::string render_csv(const ExperimentConfig& cfg, const ResultTable& table);

/// `csv` with the last field of every non-comment line removed.
std::string strip_last_column(std::string_view csv);

nlohmann::json summary_json(const ExperimentConfig& cfg, const ResultTable& table);

/// Real numbers as written to CSV: 17 significant digits.
std::string format_real(double value);

inline constexpr int kExitPass = 0;
inline constexpr int kExitNumericalFailure = 1;
inline constexpr int kExitConfigError = 2;

/// unlearn-lab <experiment> --config <path> [--out <path>]
///             [--seeds s1,s2,...] [--tolerance x]
/// Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace unlearn_lab
