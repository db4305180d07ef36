// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/scenario_io.hpp"

#include <fstream>
#include <string>

#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

namespace {

constexpr const char* kFormat = "unlearn-lab/scenario";
constexpr int kVersion = 1;

nlohmann::json matrix_to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                        const char* name) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw ConfigError(std::string(name) + ": expected " + std::to_string(rows) +
                      " rows");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ConfigError(std::string(name) + ": row " + std::to_string(i) +
                        " must have " + std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const nlohmann::json& j, Index size, const char* name) {
  if (!j.is_array() || static_cast<Index>(j.size()) != size) {
    throw ConfigError(std::string(name) + ": expected " + std::to_string(size) +
                      " entries");
  }
  Vector v(size);
  for (Index i = 0; i < size; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

}  // namespace

nlohmann::json scenario_to_json(const SyntheticScenario& s) {
  return {
      {"format", kFormat},
      {"version", kVersion},
      {"layout",
       {{"d_r", s.layout.remaining_only},
        {"d_lap", s.layout.overlap},
        {"d_f", s.layout.forgetting_only}}},
      {"seed", s.seed},
      {"dist", std::string(to_string(s.dist))},
      {"x_remain", matrix_to_json(s.x_remain)},
      {"x_forget", matrix_to_json(s.x_forget)},
      {"y_remain", vector_to_json(s.y_remain)},
      {"y_forget", vector_to_json(s.y_forget)},
      {"w_star", vector_to_json(s.w_star)},
  };
}

SyntheticScenario scenario_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat ||
        doc.at("version").get<int>() != kVersion) {
      throw ConfigError("not an unlearn-lab scenario document (version 1)");
    }
    SyntheticScenario s;
    const auto& layout = doc.at("layout");
    s.layout = {layout.at("d_r").get<Index>(), layout.at("d_lap").get<Index>(),
                layout.at("d_f").get<Index>()};
    if (s.layout.remaining_only < 0 || s.layout.overlap < 0 ||
        s.layout.forgetting_only < 0) {
      throw ConfigError("layout counts must be >= 0");
    }
    s.seed = doc.at("seed").get<std::uint64_t>();
    s.dist = distribution_from_string(doc.at("dist").get<std::string>());

    const Index d = s.layout.dim();
    const auto n_r = static_cast<Index>(doc.at("y_remain").size());
    const auto n_f = static_cast<Index>(doc.at("y_forget").size());
    s.x_remain = matrix_from_json(doc.at("x_remain"), d, n_r, "x_remain");
    s.x_forget = matrix_from_json(doc.at("x_forget"), d, n_f, "x_forget");
    s.y_remain = vector_from_json(doc.at("y_remain"), n_r, "y_remain");
    s.y_forget = vector_from_json(doc.at("y_forget"), n_f, "y_forget");
    s.w_star = vector_from_json(doc.at("w_star"), d, "w_star");

    const FeatureLayout& l = s.layout;
    if (!s.x_remain.bottomRows(l.forgetting_only).isZero(0.0)) {
      throw ConfigError("x_remain has non-zero forgetting-only features");
    }
    if (!s.x_forget.topRows(l.remaining_only).isZero(0.0)) {
      throw ConfigError("x_forget has non-zero remaining-only features");
    }
    const Vector y = s.y_full();
    const double residual = (s.x_full().transpose() * s.w_star - y).norm();
    if (!(residual <= consistency_tolerance(y))) {
      throw ConfigError("labels are inconsistent with w_star");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed scenario document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void save_scenario(const SyntheticScenario& s,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << scenario_to_json(s).dump(1) << '\n';
}

SyntheticScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace unlearn_lab
