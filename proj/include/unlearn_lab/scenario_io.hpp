// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// JSON export/import of generated scenarios for cross-implementation
// regression tests. Matrices are stored as nested row arrays (d rows);
// doubles round-trip exactly.
//
//   {
//     "format": "unlearn-lab/scenario", "version": 1,
//     "layout": {"d_r": 20, "d_lap": 0, "d_f": 20},
//     "seed": 7, "dist": "normal",
//     "x_remain": [[...], ...], "x_forget": [[...], ...],
//     "y_remain": [...], "y_forget": [...], "w_star": [...]
//   }

#pragma once

#include <filesystem>

#include <json.hpp>

#include "unlearn_lab/scenario.hpp"

namespace unlearn_lab {

nlohmann::json scenario_to_json(const SyntheticScenario& s);

/// Validates shapes, the block-zero structure and label consistency.
/// Throws ConfigError on malformed documents.
SyntheticScenario scenario_from_json(const nlohmann::json& doc);

void save_scenario(const SyntheticScenario& s, const std::filesystem::path& path);
SyntheticScenario load_scenario(const std::filesystem::path& path);

}  // namespace unlearn_lab
