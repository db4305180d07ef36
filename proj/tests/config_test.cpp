// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "unlearn_lab/config.hpp"
#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {
namespace {

using nlohmann::json;

json verify_doc() {
  return json::parse(R"({
    "experiment": "verify-theorems",
    "seeds": [1, 2],
    "scenario": {"n_r": 30, "n_f": 10, "layout": {"d_r": 20, "d_lap": 0, "d_f": 20}}
  })");
}

TEST(ParseConfig, VerifyDefaults) {
  const ExperimentConfig cfg = parse_config(verify_doc());
  EXPECT_EQ(cfg.experiment, ExperimentKind::kVerifyTheorems);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{1, 2}));
  ASSERT_EQ(cfg.layouts.size(), 1u);
  EXPECT_EQ(cfg.layouts[0].remaining_only, 20);
  EXPECT_EQ(cfg.tolerance.rel, 1e-8);
  EXPECT_EQ(cfg.tolerance.abs_floor, 1e-10);
  EXPECT_EQ(cfg.scenario.dist, Distribution::kStandardNormal);
  const std::vector<Index> sizes = cfg.fine_tune_sizes();
  ASSERT_EQ(sizes.size(), 29u);
  EXPECT_EQ(sizes.front(), 1);
  EXPECT_EQ(sizes.back(), 29);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(ParseConfig, NtForms) {
  json doc = verify_doc();
  doc["n_t"] = {3, 5};
  EXPECT_EQ(parse_config(doc).fine_tune_sizes(), (std::vector<Index>{3, 5}));
  doc["n_t"] = {{"from", 27}};
  EXPECT_EQ(parse_config(doc).fine_tune_sizes(), (std::vector<Index>{27, 28, 29}));
  doc["n_t"] = {{"from", 1}, {"step", 2}};
  EXPECT_THROW(parse_config(doc), ConfigError);
}

TEST(ParseConfig, ClassifierDefaults) {
  const ExperimentConfig demo =
      parse_config(json::parse(R"({"experiment": "classifier-demo", "seeds": [0], "ft": {}})"));
  EXPECT_EQ(demo.variants.size(), 4u);
  EXPECT_EQ(demo.alphas, (std::vector<double>{0.5}));
  EXPECT_EQ(demo.ft.epochs, 500);
  EXPECT_EQ(demo.ft.step_size, 0.1);
  EXPECT_EQ(demo.classifier.num_classes, 5);
  EXPECT_EQ(demo.classifier.per_class, 100);
  EXPECT_EQ(demo.classifier.feature_dim, 20);

  const ExperimentConfig sweep =
      parse_config(json::parse(R"({"experiment": "sweep-alpha", "seeds": [0], "ft": {}})"));
  ASSERT_EQ(sweep.variants.size(), 1u);
  EXPECT_EQ(sweep.variants[0], FtVariant::kKL_FT);
  EXPECT_EQ(sweep.alphas.front(), 0.1);
  EXPECT_EQ(sweep.alphas.back(), 0.8);
}

TEST(ParseConfig, OverlapLayouts) {
  const ExperimentConfig cfg = parse_config(json::parse(R"({
    "experiment": "sweep-overlap", "seeds": [0],
    "scenario": {"n_r": 30, "n_f": 10},
    "overlap": {"d": 40, "d_lap_values": [0, 8, 20], "n_t": 15}})"));
  const FeatureLayout l = cfg.overlap.layout_for(8);
  EXPECT_EQ(l.remaining_only, 16);
  EXPECT_EQ(l.overlap, 8);
  EXPECT_EQ(l.forgetting_only, 16);
  const FeatureLayout odd = cfg.overlap.layout_for(5);
  EXPECT_EQ(odd.remaining_only + odd.overlap + odd.forgetting_only, 40);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(ParseConfig, RejectsBadDocuments) {
  const char* bad[] = {
      R"({"seeds": [1]})",
      R"({"experiment": "verify", "seeds": [1]})",
      R"({"experiment": "verify-theorems", "seeds": [1]})",
      R"({"experiment": "sweep-overlap", "seeds": [1], "scenario": {}})",
      R"({"experiment": "classifier-demo", "seeds": [1]})",
      R"({"experiment": "sweep-nt", "seeds": [1], "scenario": {}, "extra": 1})",
      R"({"experiment": "sweep-nt", "seeds": [1], "scenario": {"n_r": "thirty"}})",
      R"({"experiment": "sweep-nt", "seeds": [1], "scenario": {"layout": {"d_r": 3}}})",
      R"({"experiment": "sweep-nt", "seeds": [1], "scenario": {"dist": "cauchy"}})",
      R"({"experiment": "sweep-nt", "seeds": [-1], "scenario": {}})",
      R"({"experiment": "sweep-nt", "seeds": [1.5], "scenario": {}})",
      R"({"experiment": "sweep-nt", "seeds": 1, "scenario": {}})",
      R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {"variants": ["SGD"]}})",
      R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {"momentum": 0.9}})",
      R"({"experiment": "sweep-nt", "seeds": [1], "scenario": {}, "tolerance": {"abs": 1}})",
      R"([1, 2])",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_config(json::parse(text)), ConfigError) << text;
  }
}

TEST(Validate, RejectsUnrunnableConfigs) {
  const auto rejects = [](const json& doc) {
    const ExperimentConfig cfg = parse_config(doc);
    EXPECT_THROW(validate(cfg), ConfigError) << doc.dump();
  };
  json doc = verify_doc();
  doc["seeds"] = json::array();
  rejects(doc);
  doc = verify_doc();
  doc["n_t"] = {0};
  rejects(doc);
  doc["n_t"] = {30};
  rejects(doc);
  doc = verify_doc();
  doc["tolerance"] = {{"rel", -1.0}};
  rejects(doc);
  doc = verify_doc();
  doc["scenario"]["n_f"] = 0;
  rejects(doc);
  doc = verify_doc();
  doc["scenario"]["layout"] = {{"d_r", 10}, {"d_f", 10}};
  rejects(doc);
  rejects(json::parse(R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {"alphas": []}})"));
  rejects(json::parse(R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {"alphas": [2.0]}})"));
  rejects(json::parse(R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {"step_size": 0}})"));
  rejects(json::parse(
      R"({"experiment": "sweep-alpha", "seeds": [1], "ft": {}, "classifier": {"forget_class": 9}})"));
  rejects(json::parse(R"({"experiment": "sweep-overlap", "seeds": [1], "scenario": {},
                          "overlap": {"d": 40, "d_lap_values": [50]}})"));
}

TEST(ToJson, RoundTripsEveryKind) {
  const char* docs[] = {
      R"({"experiment": "verify-theorems", "seeds": [3], "scenario": {},
          "layouts": [{"d_r": 20, "d_f": 20}, {"d_r": 16, "d_lap": 8, "d_f": 16}],
          "n_t": {"from": 1, "to": 4}, "tolerance": {"rel": 1e-7}})",
      R"({"experiment": "sweep-nt", "seeds": [3, 4], "scenario": {"dist": "uniform"},
          "output_path": "x.csv"})",
      R"({"experiment": "sweep-overlap", "seeds": [3], "scenario": {}, "overlap": {}})",
      R"({"experiment": "classifier-demo", "seeds": [3], "ft": {"epochs": 7},
          "classifier": {"sep": 2.5}})",
      R"({"experiment": "sweep-alpha", "seeds": [3], "ft": {"alphas": [0.25]}})",
  };
  for (const char* text : docs) {
    const ExperimentConfig cfg = parse_config(json::parse(text));
    const json once = to_json(cfg);
    EXPECT_EQ(to_json(parse_config(once)), once) << text;
  }
}

TEST(ToJson, MaterializesDefaults) {
  const json j = to_json(parse_config(verify_doc()));
  EXPECT_EQ(j["n_t"].size(), 29u);
  EXPECT_EQ(j["tolerance"]["rel"], 1e-8);
  EXPECT_EQ(j["scenario"]["dist"], "normal");
  EXPECT_FALSE(j.contains("ft"));
}

TEST(SeedList, Parses) {
  EXPECT_EQ(parse_seed_list("1,2,3"), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(parse_seed_list("18446744073709551615"),
            (std::vector<std::uint64_t>{18446744073709551615ULL}));
  EXPECT_TRUE(parse_seed_list("").empty());
  EXPECT_THROW(parse_seed_list("1,,2"), ConfigError);
  EXPECT_THROW(parse_seed_list("1,x"), ConfigError);
  EXPECT_THROW(parse_seed_list("-3"), ConfigError);
  EXPECT_THROW(parse_seed_list("1,"), ConfigError);
}

TEST(ExperimentKindNames, RoundTrip) {
  for (auto k : {ExperimentKind::kVerifyTheorems, ExperimentKind::kSweepNt,
                 ExperimentKind::kSweepOverlap, ExperimentKind::kClassifierDemo,
                 ExperimentKind::kSweepAlpha}) {
    EXPECT_EQ(experiment_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(experiment_kind_from_string("verify_theorems"), ConfigError);
}

}  // namespace
}  // namespace unlearn_lab
