// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/config.hpp"

#include <charconv>
#include <set>

#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T read(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

FeatureLayout layout_from_json(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"d_r", "d_lap", "d_f"}, where);
  if (!j.contains("d_r") || !j.contains("d_f")) {
    throw ConfigError(where + " needs d_r and d_f");
  }
  FeatureLayout l{read<Index>(j, "d_r", 0, where), read<Index>(j, "d_lap", 0, where),
                  read<Index>(j, "d_f", 0, where)};
  if (l.remaining_only < 0 || l.overlap < 0 || l.forgetting_only < 0) {
    throw ConfigError(where + " counts must be >= 0");
  }
  return l;
}

json layout_to_json(const FeatureLayout& l) {
  return {{"d_r", l.remaining_only}, {"d_lap", l.overlap}, {"d_f", l.forgetting_only}};
}

bool needs_scenario(ExperimentKind k) {
  return k == ExperimentKind::kVerifyTheorems || k == ExperimentKind::kSweepNt ||
         k == ExperimentKind::kSweepOverlap;
}

bool is_classifier(ExperimentKind k) {
  return k == ExperimentKind::kClassifierDemo || k == ExperimentKind::kSweepAlpha;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kVerifyTheorems:
      return "verify-theorems";
    case ExperimentKind::kSweepNt:
      return "sweep-nt";
    case ExperimentKind::kSweepOverlap:
      return "sweep-overlap";
    case ExperimentKind::kClassifierDemo:
      return "classifier-demo";
    case ExperimentKind::kSweepAlpha:
      return "sweep-alpha";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::kVerifyTheorems, ExperimentKind::kSweepNt,
                 ExperimentKind::kSweepOverlap, ExperimentKind::kClassifierDemo,
                 ExperimentKind::kSweepAlpha}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

FeatureLayout OverlapSweepParams::layout_for(Index d_lap) const {
  const Index d_r = (dim - d_lap) / 2;
  return {d_r, d_lap, dim - d_lap - d_r};
}

std::vector<Index> ExperimentConfig::fine_tune_sizes() const {
  if (!n_t_values.empty()) return n_t_values;
  std::vector<Index> out;
  for (Index n = 1; n < scenario.n_remain; ++n) out.push_back(n);
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  reject_unknown_keys(doc,
                      {"experiment", "seeds", "scenario", "layouts", "n_t", "overlap",
                       "classifier", "ft", "tolerance", "output_path"},
                      "config");
  if (!doc.contains("experiment")) throw ConfigError("config needs 'experiment'");
  ExperimentConfig cfg;
  cfg.experiment =
      experiment_kind_from_string(read<std::string>(doc, "experiment", "", "config"));
  if (doc.contains("seeds")) {
    const json& seeds = doc.at("seeds");
    if (!seeds.is_array()) throw ConfigError("config.seeds must be an array");
    for (const json& s : seeds) {
      if (!s.is_number_unsigned()) throw ConfigError("seeds must be non-negative integers, got " + s.dump());
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (needs_scenario(cfg.experiment) && !doc.contains("scenario")) {
    throw ConfigError(std::string(to_string(cfg.experiment)) +
                      " needs a 'scenario' section");
  }
  if (doc.contains("scenario")) {
    const json& sc = doc.at("scenario");
    reject_unknown_keys(sc, {"n_r", "n_f", "layout", "dist"}, "scenario");
    cfg.scenario.n_remain = read<Index>(sc, "n_r", cfg.scenario.n_remain, "scenario");
    cfg.scenario.n_forget = read<Index>(sc, "n_f", cfg.scenario.n_forget, "scenario");
    if (sc.contains("layout")) {
      cfg.scenario.layout = layout_from_json(sc.at("layout"), "scenario.layout");
    }
    try {
      cfg.scenario.dist = distribution_from_string(read<std::string>(sc, "dist", "normal", "scenario"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  if (doc.contains("layouts")) {
    const json& ls = doc.at("layouts");
    if (!ls.is_array()) throw ConfigError("layouts must be an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      cfg.layouts.push_back(layout_from_json(ls[i], "layouts[" + std::to_string(i) + "]"));
    }
  }
  if (cfg.layouts.empty()) cfg.layouts.push_back(cfg.scenario.layout);

  if (doc.contains("n_t")) {
    const json& nt = doc.at("n_t");
    if (nt.is_array()) {
      cfg.n_t_values = read<std::vector<Index>>(doc, "n_t", {}, "config");
    } else {
      reject_unknown_keys(nt, {"from", "to"}, "n_t");
      const Index from = read<Index>(nt, "from", 1, "n_t");
      const Index to = read<Index>(nt, "to", cfg.scenario.n_remain - 1, "n_t");
      for (Index n = from; n <= to; ++n) cfg.n_t_values.push_back(n);
    }
  }

  if (cfg.experiment == ExperimentKind::kSweepOverlap && !doc.contains("overlap")) {
    throw ConfigError("sweep-overlap needs an 'overlap' section");
  }
  if (doc.contains("overlap")) {
    const json& ov = doc.at("overlap");
    reject_unknown_keys(ov, {"d", "d_lap_values", "n_t"}, "overlap");
    cfg.overlap.dim = read<Index>(ov, "d", cfg.overlap.dim, "overlap");
    cfg.overlap.d_lap_values =
        read<std::vector<Index>>(ov, "d_lap_values", cfg.overlap.d_lap_values, "overlap");
    cfg.overlap.n_t = read<Index>(ov, "n_t", cfg.overlap.n_t, "overlap");
  }

  if (doc.contains("classifier")) {
    const json& c = doc.at("classifier");
    reject_unknown_keys(c, {"num_classes", "per_class", "feature_dim", "sep",
                            "forget_class", "pretrain_epochs"},
                        "classifier");
    ClassTaskSpec& t = cfg.classifier;
    t.num_classes = read<Index>(c, "num_classes", t.num_classes, "classifier");
    t.per_class = read<Index>(c, "per_class", t.per_class, "classifier");
    t.feature_dim = read<Index>(c, "feature_dim", t.feature_dim, "classifier");
    t.sep = read<double>(c, "sep", t.sep, "classifier");
    t.forget_class = read<int>(c, "forget_class", t.forget_class, "classifier");
    t.pretrain_epochs = read<int>(c, "pretrain_epochs", t.pretrain_epochs, "classifier");
  }

  if (is_classifier(cfg.experiment) && !doc.contains("ft")) {
    throw ConfigError(std::string(to_string(cfg.experiment)) + " needs an 'ft' section");
  }
  const bool demo = cfg.experiment == ExperimentKind::kClassifierDemo;
  std::vector<std::string> variant_names =
      demo ? std::vector<std::string>{"NaiveFT", "KL_FT", "CE_FT", "ICE_FT"}
           : std::vector<std::string>{"KL_FT"};
  cfg.alphas = demo ? std::vector<double>{0.5}
                    : std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  if (doc.contains("ft")) {
    const json& f = doc.at("ft");
    reject_unknown_keys(f, {"variants", "alphas", "epochs", "step_size"}, "ft");
    variant_names = read<std::vector<std::string>>(f, "variants", variant_names, "ft");
    cfg.alphas = read<std::vector<double>>(f, "alphas", cfg.alphas, "ft");
    cfg.ft.epochs = read<int>(f, "epochs", cfg.ft.epochs, "ft");
    cfg.ft.step_size = read<double>(f, "step_size", cfg.ft.step_size, "ft");
  }
  for (const auto& name : variant_names) {
    try {
      cfg.variants.push_back(ft_variant_from_string(name));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  if (doc.contains("tolerance")) {
    const json& t = doc.at("tolerance");
    reject_unknown_keys(t, {"rel", "abs_floor"}, "tolerance");
    cfg.tolerance.rel = read<double>(t, "rel", cfg.tolerance.rel, "tolerance");
    cfg.tolerance.abs_floor = read<double>(t, "abs_floor", cfg.tolerance.abs_floor, "tolerance");
  }
  if (doc.contains("output_path")) {
    cfg.output_path = read<std::string>(doc, "output_path", "", "config");
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("seed list is empty");
  if (!(cfg.tolerance.rel >= 0.0) || !(cfg.tolerance.abs_floor >= 0.0)) {
    throw ConfigError("tolerances must be >= 0");
  }
  const ScenarioParams& sc = cfg.scenario;
  if (sc.n_remain < 1 || sc.n_forget < 1) throw ConfigError("n_r and n_f must be >= 1");

  auto check_n_t = [&](Index n_t) {
    if (n_t < 1 || n_t > sc.n_remain - 1) {
      throw ConfigError("n_t = " + std::to_string(n_t) + " outside [1, " +
                        std::to_string(sc.n_remain - 1) + "]");
    }
  };
  auto check_regime = [&](const FeatureLayout& l, const std::string& what) {
    if (sc.n_remain + sc.n_forget > l.dim()) {
      throw ConfigError(what + ": n_r + n_f = " +
                        std::to_string(sc.n_remain + sc.n_forget) + " exceeds d = " +
                        std::to_string(l.dim()));
    }
  };

  switch (cfg.experiment) {
    case ExperimentKind::kVerifyTheorems:
      for (const auto& l : cfg.layouts) check_regime(l, "layout");
      for (Index n : cfg.fine_tune_sizes()) check_n_t(n);
      break;
    case ExperimentKind::kSweepNt:
      check_regime(sc.layout, "scenario.layout");
      for (Index n : cfg.fine_tune_sizes()) check_n_t(n);
      break;
    case ExperimentKind::kSweepOverlap:
      if (cfg.overlap.d_lap_values.empty()) throw ConfigError("overlap.d_lap_values is empty");
      for (Index d_lap : cfg.overlap.d_lap_values) {
        if (d_lap < 0 || d_lap > cfg.overlap.dim) {
          throw ConfigError("overlap.d_lap_values entry outside [0, d]");
        }
        check_regime(cfg.overlap.layout_for(d_lap), "overlap layout");
      }
      check_n_t(cfg.overlap.n_t);
      break;
    case ExperimentKind::kClassifierDemo:
    case ExperimentKind::kSweepAlpha:
      if (cfg.variants.empty()) throw ConfigError("ft.variants is empty");
      if (cfg.alphas.empty()) throw ConfigError("ft.alphas is empty");
      try {
        validate(cfg.classifier);
        for (double alpha : cfg.alphas) {
          FtConfig probe = cfg.ft;
          probe.alpha = alpha;
          validate(probe);
        }
        if (cfg.classifier.num_classes < 2 || cfg.classifier.per_class < 1 ||
            cfg.classifier.feature_dim < cfg.classifier.num_classes ||
            !(cfg.classifier.sep > 0.0)) {
          throw std::invalid_argument(
              "classifier needs num_classes >= 2, per_class >= 1, "
              "feature_dim >= num_classes and sep > 0");
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      break;
  }
}

json to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["experiment"] = std::string(to_string(cfg.experiment));
  doc["seeds"] = cfg.seeds;
  doc["tolerance"] = {{"rel", cfg.tolerance.rel}, {"abs_floor", cfg.tolerance.abs_floor}};
  if (needs_scenario(cfg.experiment)) {
    doc["scenario"] = {{"n_r", cfg.scenario.n_remain},
                       {"n_f", cfg.scenario.n_forget},
                       {"layout", layout_to_json(cfg.scenario.layout)},
                       {"dist", std::string(to_string(cfg.scenario.dist))}};
  }
  if (cfg.experiment == ExperimentKind::kVerifyTheorems) {
    json ls = json::array();
    for (const auto& l : cfg.layouts) ls.push_back(layout_to_json(l));
    doc["layouts"] = ls;
  }
  if (cfg.experiment == ExperimentKind::kVerifyTheorems ||
      cfg.experiment == ExperimentKind::kSweepNt) {
    doc["n_t"] = cfg.fine_tune_sizes();
  }
  if (cfg.experiment == ExperimentKind::kSweepOverlap) {
    doc["overlap"] = {{"d", cfg.overlap.dim},
                      {"d_lap_values", cfg.overlap.d_lap_values},
                      {"n_t", cfg.overlap.n_t}};
  }
  if (is_classifier(cfg.experiment)) {
    const ClassTaskSpec& t = cfg.classifier;
    doc["classifier"] = {{"num_classes", t.num_classes},   {"per_class", t.per_class},
                         {"feature_dim", t.feature_dim},   {"sep", t.sep},
                         {"forget_class", t.forget_class}, {"pretrain_epochs", t.pretrain_epochs}};
    json variants = json::array();
    for (auto v : cfg.variants) variants.push_back(std::string(to_string(v)));
    doc["ft"] = {{"variants", variants},
                 {"alphas", cfg.alphas},
                 {"epochs", cfg.ft.epochs},
                 {"step_size", cfg.ft.step_size}};
  }
  if (cfg.output_path) doc["output_path"] = *cfg.output_path;
  return doc;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  if (text.empty()) return seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw ConfigError("invalid seed '" + std::string(item) + "'");
    }
    seeds.push_back(value);
    pos = comma + 1;
  }
  return seeds;
}

}  // namespace unlearn_lab
