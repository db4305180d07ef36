// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "unlearn_lab/errors.hpp"
#include "unlearn_lab/philox.hpp"
#include "unlearn_lab/scenario.hpp"
#include "unlearn_lab/scenario_io.hpp"

namespace unlearn_lab {
namespace {

using testing::Gen;
using testing::max_abs;

// Known-answer vectors published with the Random123 reference
// implementation (philox4x32, 10 rounds).
TEST(Philox, KnownAnswerZero) {
  constexpr auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  static_assert(out[0] == 0x6627e8d5u);
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                     {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                     {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStreamTest, UniformsAreTopBitsOfTheBlock) {
  const CounterStream stream(0x1234567890abcdefULL, 3);
  const auto raw = Philox4x32::block({17, 0, 3, 0}, {0x90abcdef, 0x12345678});
  const auto [a, b] = stream.uniform_pair(17);
  const std::uint64_t hi = (std::uint64_t{raw[0]} << 32) | raw[1];
  const std::uint64_t lo = (std::uint64_t{raw[2]} << 32) | raw[3];
  EXPECT_EQ(a, std::ldexp(static_cast<double>(hi >> 11), -53));
  EXPECT_EQ(b, std::ldexp(static_cast<double>(lo >> 11), -53));
}

TEST(CounterStreamTest, BoxMullerCosineBranch) {
  const CounterStream stream(99, 5);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto [u1, u2] = stream.uniform_pair(i);
    const double expected =
        std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
    EXPECT_NEAR(stream.normal(i), expected, 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST(CounterStreamTest, MomentsAreClose) {
  const CounterStream stream(2024, 1);
  constexpr int kDraws = 200000;
  double sum = 0.0, sum_sq = 0.0, usum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = stream.normal(static_cast<std::uint64_t>(i));
    sum += z;
    sum_sq += z * z;
    const double u = stream.uniform_symmetric(static_cast<std::uint64_t>(i));
    EXPECT_GT(u, -1.0);
    EXPECT_LT(u, 1.0);
    usum += u;
  }
  // Bounds are about five standard errors.
  EXPECT_NEAR(sum / kDraws, 0.0, 0.012);
  EXPECT_NEAR(sum_sq / kDraws, 1.0, 0.016);
  EXPECT_NEAR(usum / kDraws, 0.0, 0.007);
}

TEST(CounterStreamTest, StreamsAndSeedsDiffer) {
  EXPECT_NE(CounterStream(1, 1).normal(0), CounterStream(1, 2).normal(0));
  EXPECT_NE(CounterStream(1, 1).normal(0), CounterStream(2, 1).normal(0));
  EXPECT_NE(CounterStream(1ULL << 32, 1).normal(0), CounterStream(0, 1).normal(0));
}

TEST(GenerateScenario, BaselineDistinctGeometry) {
  const SyntheticScenario s = generate_scenario(30, 10, {20, 0, 20}, 7);
  EXPECT_EQ(s.dim(), 40);
  EXPECT_EQ(s.n_remain() + s.n_forget(), 40);
  EXPECT_EQ(s.x_remain.rows(), 40);
  EXPECT_EQ(s.x_forget.cols(), 10);
  EXPECT_TRUE(s.x_forget.topRows(20).isZero(0.0));
  EXPECT_TRUE(s.x_remain.bottomRows(20).isZero(0.0));
  EXPECT_EQ(s.seed, 7u);
}

TEST(GenerateScenario, BaselineOverlapGeometry) {
  const SyntheticScenario s = generate_scenario(30, 10, {16, 8, 16}, 7);
  EXPECT_EQ(s.layout.overlap, 8);
  EXPECT_TRUE(s.x_forget.topRows(16).isZero(0.0));
  EXPECT_TRUE(s.x_remain.bottomRows(16).isZero(0.0));
  EXPECT_FALSE(s.x_remain.middleRows(16, 8).isZero(0.0));
  EXPECT_FALSE(s.x_forget.middleRows(16, 8).isZero(0.0));
}

TEST(GenerateScenario, DistinctBlocksSplitTheProjector) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SyntheticScenario s = generate_scenario(30, 10, {20, 0, 20}, seed);
    const Matrix p = projector(s.x_full()).matrix();
    const Matrix sum = projector(s.x_remain).matrix() + projector(s.x_forget).matrix();
    EXPECT_LE(max_abs(p - sum), 1e-9) << "seed " << seed;
  }
}

TEST(GenerateScenario, BlockStructureAndLabels) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Gen gen(seed);
    const Index n_r = gen.integer(1, 12);
    const Index n_f = gen.integer(1, 8);
    const FeatureLayout l = gen.layout(n_r + n_f, 40);
    const Distribution dist =
        gen.integer(0, 1) ? Distribution::kStandardNormal : Distribution::kUniformSymmetric;
    const SyntheticScenario s = generate_scenario(n_r, n_f, l, seed, dist);
    EXPECT_TRUE(s.x_remain.bottomRows(l.forgetting_only).isZero(0.0));
    EXPECT_TRUE(s.x_forget.topRows(l.remaining_only).isZero(0.0));
    EXPECT_EQ(s.y_remain, s.x_remain.transpose() * s.w_star);
    EXPECT_EQ(s.y_forget, s.x_forget.transpose() * s.w_star);
    if (dist == Distribution::kUniformSymmetric) {
      EXPECT_LT(s.x_remain.cwiseAbs().maxCoeff(), 1.0);
    }
  }
}

TEST(GenerateScenario, DeterministicPerSeed) {
  const SyntheticScenario a = generate_scenario(12, 5, {8, 4, 8}, 42);
  const SyntheticScenario b = generate_scenario(12, 5, {8, 4, 8}, 42);
  const SyntheticScenario c = generate_scenario(12, 5, {8, 4, 8}, 43);
  EXPECT_EQ(a.x_remain, b.x_remain);
  EXPECT_EQ(a.x_forget, b.x_forget);
  EXPECT_EQ(a.w_star, b.w_star);
  EXPECT_NE(a.x_remain, c.x_remain);
}

TEST(GenerateScenario, EntriesComeFromNamedStreams) {
  const std::uint64_t seed = 5;
  const SyntheticScenario s = generate_scenario(6, 4, {5, 3, 7}, seed);
  // Literal arguments let the compiler fold normal() with correctly rounded
  // math, so compare to a few ulp rather than bit-for-bit.
  // Remaining-only block R uses stream 1 and counter i * n_r + j.
  EXPECT_DOUBLE_EQ(s.x_remain(2, 3), CounterStream(seed, 1).normal(2 * 6 + 3));
  // L1 stream 2, L2 stream 3, F stream 4, w_star stream 5.
  EXPECT_DOUBLE_EQ(s.x_remain(5 + 1, 0), CounterStream(seed, 2).normal(1 * 6 + 0));
  EXPECT_DOUBLE_EQ(s.x_forget(5 + 2, 1), CounterStream(seed, 3).normal(2 * 4 + 1));
  EXPECT_DOUBLE_EQ(s.x_forget(8 + 6, 3), CounterStream(seed, 4).normal(6 * 4 + 3));
  EXPECT_DOUBLE_EQ(s.w_star(9), CounterStream(seed, 5).normal(9));
}

TEST(GenerateScenario, SampleCountsDoNotShiftOtherBlocks) {
  const SyntheticScenario a = generate_scenario(6, 4, {10, 0, 10}, 3);
  const SyntheticScenario b = generate_scenario(6, 9, {10, 0, 10}, 3);
  EXPECT_EQ(a.x_remain, b.x_remain);
  EXPECT_EQ(a.w_star, b.w_star);
}

TEST(GenerateScenario, Errors) {
  EXPECT_THROW(generate_scenario(30, 11, {20, 0, 20}, 1), RegimeViolation);
  EXPECT_THROW(generate_scenario(0, 5, {20, 0, 20}, 1), std::invalid_argument);
  EXPECT_THROW(generate_scenario(5, 5, {-1, 0, 20}, 1), std::invalid_argument);
  EXPECT_NO_THROW(generate_scenario(30, 10, {20, 0, 20}, 1));
}

TEST(DecomposeWStar, PartsSumAndDisjoint) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Gen gen(seed);
    const FeatureLayout l = gen.layout(6, 30);
    const SyntheticScenario s = generate_scenario(3, 3, l, seed);
    const WStarDecomposition p = decompose_w_star(s);
    EXPECT_EQ(p.remaining + p.overlap + p.forgetting, s.w_star);
    EXPECT_EQ(p.remaining.cwiseProduct(p.overlap).squaredNorm(), 0.0);
    EXPECT_EQ(p.remaining.cwiseProduct(p.forgetting).squaredNorm(), 0.0);
    EXPECT_TRUE(p.remaining.tail(l.dim() - l.remaining_end()).isZero(0.0));
    EXPECT_TRUE(p.forgetting.head(l.overlap_end()).isZero(0.0));
    // X_r^T w_f = 0 and X_f^T w_r = 0.
    EXPECT_EQ((s.x_remain.transpose() * p.forgetting).squaredNorm(), 0.0);
    EXPECT_EQ((s.x_forget.transpose() * p.remaining).squaredNorm(), 0.0);
  }
}

TEST(DecomposeWStar, DistinctLayoutHasNoOverlap) {
  const SyntheticScenario s = generate_scenario(30, 10, {20, 0, 20}, 1);
  EXPECT_TRUE(decompose_w_star(s).overlap.isZero(0.0));
}

TEST(FineTuneSubset, FirstColumns) {
  const SyntheticScenario s = generate_scenario(30, 10, {16, 8, 16}, 2);
  const FineTuneSet t = fine_tune_subset(s, 7);
  EXPECT_EQ(t.x, s.x_remain.leftCols(7));
  EXPECT_EQ(t.y, s.y_remain.head(7));
  EXPECT_THROW(fine_tune_subset(s, 0), std::out_of_range);
  EXPECT_THROW(fine_tune_subset(s, 31), std::out_of_range);
  EXPECT_NO_THROW(fine_tune_subset(s, 30));
}

TEST(ScenarioJson, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Distribution dist =
        seed % 2 ? Distribution::kUniformSymmetric : Distribution::kStandardNormal;
    const SyntheticScenario s = generate_scenario(9, 4, {6, 3, 5}, seed, dist);
    const SyntheticScenario back = scenario_from_json(nlohmann::json::parse(scenario_to_json(s).dump()));
    EXPECT_EQ(back.layout, s.layout);
    EXPECT_EQ(back.seed, s.seed);
    EXPECT_EQ(back.dist, s.dist);
    EXPECT_EQ(back.x_remain, s.x_remain);
    EXPECT_EQ(back.x_forget, s.x_forget);
    EXPECT_EQ(back.y_remain, s.y_remain);
    EXPECT_EQ(back.y_forget, s.y_forget);
    EXPECT_EQ(back.w_star, s.w_star);
  }
}

TEST(ScenarioJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "unlearn_lab_scenario_test.json";
  const SyntheticScenario s = generate_scenario(5, 3, {4, 2, 4}, 11);
  save_scenario(s, path);
  const SyntheticScenario back = load_scenario(path);
  EXPECT_EQ(back.x_full(), s.x_full());
  std::filesystem::remove(path);
  EXPECT_THROW(load_scenario(path), ConfigError);
}

TEST(ScenarioJson, RejectsBrokenDocuments) {
  const SyntheticScenario s = generate_scenario(5, 3, {4, 2, 4}, 11);
  nlohmann::json doc = scenario_to_json(s);

  auto broken = doc;
  broken["version"] = 2;
  EXPECT_THROW(scenario_from_json(broken), ConfigError);

  broken = doc;
  broken["x_remain"][9][0] = 1.0;  // forgetting-only coordinate of a remaining sample
  EXPECT_THROW(scenario_from_json(broken), ConfigError);

  broken = doc;
  broken["y_forget"][0] = broken["y_forget"][0].get<double>() + 1.0;
  EXPECT_THROW(scenario_from_json(broken), ConfigError);

  broken = doc;
  broken["w_star"].erase(0);
  EXPECT_THROW(scenario_from_json(broken), ConfigError);

  broken = doc;
  broken.erase("layout");
  EXPECT_THROW(scenario_from_json(broken), ConfigError);
}

}  // namespace
}  // namespace unlearn_lab
