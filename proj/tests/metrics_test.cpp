// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "unlearn_lab/errors.hpp"
#include "unlearn_lab/metrics.hpp"
#include "unlearn_lab/solvers.hpp"

namespace unlearn_lab {
namespace {

using testing::Gen;

TEST(MseLoss, Interpolant) {
  Gen gen(1);
  const Matrix x = gen.matrix(8, 3);
  const Vector w = gen.vector(8);
  EXPECT_EQ(mse_loss(w, x, x.transpose() * w), 0.0);
}

TEST(MseLoss, NullModel) {
  Gen gen(2);
  const Matrix x = gen.matrix(6, 4);
  const Vector y = gen.vector(4);
  EXPECT_NEAR(mse_loss(Vector::Zero(6), x, y), y.squaredNorm() / 4.0, 1e-15);
}

TEST(MseLoss, ExplicitSum) {
  Gen gen(3);
  const Matrix x = gen.matrix(5, 7);
  const Vector w = gen.vector(5);
  const Vector y = gen.vector(7);
  double total = 0.0;
  for (Index j = 0; j < 7; ++j) {
    const double r = x.col(j).dot(w) - y(j);
    total += r * r;
  }
  EXPECT_NEAR(mse_loss(w, x, y), total / 7.0, 1e-13);
}

TEST(MseLoss, ColumnPermutationInvariance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen gen(seed);
    const Index n = gen.integer(1, 12);
    const Matrix x = gen.matrix(gen.integer(1, 10), n);
    const Vector w = gen.vector(x.rows());
    const Vector y = gen.vector(n);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) std::swap(order[i], order[gen.integer(0, i)]);
    Matrix xp(x.rows(), n);
    Vector yp(n);
    for (Index j = 0; j < n; ++j) {
      xp.col(j) = x.col(order[j]);
      yp(j) = y(order[j]);
    }
    const double a = mse_loss(w, x, y);
    EXPECT_NEAR(mse_loss(w, xp, yp), a, 1e-12 * (1.0 + a));
    EXPECT_GE(a, 0.0);
  }
}

TEST(MseLoss, Errors) {
  EXPECT_THROW(mse_loss(Vector::Zero(3), Matrix::Zero(4, 2), Vector::Zero(2)), DimensionMismatch);
  EXPECT_THROW(mse_loss(Vector::Zero(4), Matrix::Zero(4, 0), Vector::Zero(0)),
               std::invalid_argument);
}

TEST(MeasureLosses, GoldenOnBaselineGeometry) {
  const SyntheticScenario s = generate_scenario(30, 10, {20, 0, 20}, 7);
  const LossReport r = measure_losses(retrain_golden(s), s, ModelTag::kGolden);
  const double predicted = predict_thm1(s).ul_gold;
  EXPECT_LE(std::abs(r.ul - predicted), 1e-8 * predicted);
  EXPECT_LT(r.rl, 1e-9);
  EXPECT_EQ(r.model, ModelTag::kGolden);
  EXPECT_EQ(r.provenance.seed, 7u);
}

TEST(MeasureLosses, FineTunedLossesVanish) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Gen gen(seed);
    const Index n_r = gen.integer(2, 12);
    const Index n_f = gen.integer(1, 6);
    const SyntheticScenario s = generate_scenario(n_r, n_f, gen.layout(n_r + n_f, 30), seed);
    const Index n_t = gen.integer(1, n_r - 1);
    const FineTuneSet sub = fine_tune_subset(s, n_t);
    const LossReport r = measure_losses(fine_tune_unlearn(train_original(s), sub.x, sub.y), s,
                                        ModelTag::kFineTuned, n_t);
    EXPECT_LT(r.rl, 1e-9) << "seed " << seed;
    EXPECT_LT(r.ul, 1e-9) << "seed " << seed;
  }
}

TEST(ToleranceGap, IdenticalValues) {
  const FieldGap g = compare_field("x", 0.25, 0.25);
  EXPECT_EQ(g.abs_gap, 0.0);
  EXPECT_EQ(g.rel_gap, 0.0);
  EXPECT_TRUE(g.pass);
}

TEST(ToleranceGap, AbsoluteFloor) {
  const FieldGap g = compare_field("x", 1e-12, 0.0);
  EXPECT_TRUE(g.pass);
  EXPECT_TRUE(std::isinf(g.rel_gap));
  EXPECT_FALSE(compare_field("x", 1e-9, 0.0).pass);
}

TEST(ToleranceGap, RelativeFailure) {
  const FieldGap g = compare_field("x", 0.6, 0.5);
  EXPECT_NEAR(g.abs_gap, 0.1, 1e-15);
  EXPECT_NEAR(g.rel_gap, 0.2, 1e-15);
  EXPECT_FALSE(g.pass);
}

TEST(ToleranceGap, PolicyBoundary) {
  const TolerancePolicy p{1e-8, 1e-10};
  EXPECT_TRUE(p.accepts(100.0 + 0.5e-6, 100.0));
  EXPECT_FALSE(p.accepts(100.0 + 2e-6, 100.0));
  const TolerancePolicy exact{0.0, 0.0};
  EXPECT_TRUE(exact.accepts(3.0, 3.0));
  EXPECT_FALSE(exact.accepts(3.0, std::nextafter(3.0, 4.0)));
}

TEST(GapReportTest, SelectsFieldsByModel) {
  const SyntheticScenario s = generate_scenario(6, 3, {5, 2, 5}, 4);
  TheoremPrediction p = predict_thm3(s, EditOption::kOverlapRetain, 2);
  LossReport m{0.0, *p.ul_edit, ModelTag::kEditedFineTuned, provenance_of(s, 2)};
  GapReport r = gap_report(m, p);
  ASSERT_EQ(r.fields.size(), 2u);
  EXPECT_EQ(r.fields[0].field, "rl_edit");
  EXPECT_EQ(r.fields[1].field, "ul_edit");
  EXPECT_TRUE(r.pass());

  m.model = ModelTag::kGolden;
  m.ul = p.ul_gold * 2.0 + 1.0;
  r = gap_report(m, p);
  EXPECT_EQ(r.fields[1].field, "ul_gold");
  EXPECT_FALSE(r.pass());
}

TEST(GapReportTest, ProvenanceMismatch) {
  const SyntheticScenario a = generate_scenario(6, 3, {5, 2, 5}, 4);
  const SyntheticScenario b = generate_scenario(6, 3, {5, 2, 5}, 5);
  const TheoremPrediction p = predict_thm2(a);
  EXPECT_THROW(gap_report(LossReport{0, 0, ModelTag::kGolden, provenance_of(b)}, p),
               ProvenanceMismatch);
  EXPECT_THROW(gap_report(LossReport{0, 0, ModelTag::kOriginal, provenance_of(a)}, p),
               ProvenanceMismatch);
  // No edited fields in a Theorem 2 prediction.
  EXPECT_THROW(gap_report(LossReport{0, 0, ModelTag::kEditedFineTuned, provenance_of(a, 2)}, p),
               ProvenanceMismatch);
  const TheoremPrediction p3 = predict_thm3(a, EditOption::kOverlapRetain, 2);
  EXPECT_THROW(gap_report(LossReport{0, 0, ModelTag::kEditedFineTuned, provenance_of(a, 3)}, p3),
               ProvenanceMismatch);
  const SyntheticScenario c = generate_scenario(6, 3, {4, 3, 5}, 4);
  EXPECT_THROW(gap_report(LossReport{0, 0, ModelTag::kGolden, provenance_of(c)}, p),
               ProvenanceMismatch);
}

LabeledSet labeled(const Matrix& features, std::vector<int> labels) {
  return {features, std::move(labels)};
}

SoftmaxClassifier axis_model(Index classes) {
  SoftmaxClassifier m = SoftmaxClassifier::zeros(classes, classes);
  m.weights = Matrix::Identity(classes, classes);
  return m;
}

TEST(Accuracy, PerfectAndTotalForgetting) {
  const SoftmaxClassifier m = axis_model(3);
  const Matrix x = Matrix::Identity(3, 3);
  EXPECT_EQ(accuracy(m, labeled(x, {0, 1, 2})), 1.0);
  // Every prediction shifted by one class: nothing matches.
  EXPECT_EQ(accuracy(m, labeled(x, {1, 2, 0})), 0.0);

  const LabeledSet forget = labeled(x.leftCols(1), {0});
  const Metrics ok = classifier_metrics(m, forget, labeled(x, {0, 1, 2}), labeled(x, {0, 1, 2}));
  EXPECT_EQ(ok.ua, 0.0);
  EXPECT_EQ(ok.ra, 1.0);
  EXPECT_EQ(ok.ta, 1.0);
  const Metrics gone =
      classifier_metrics(m, labeled(x, {2, 0, 1}), labeled(x, {0, 1, 2}), labeled(x, {0, 1, 2}));
  EXPECT_EQ(gone.ua, 1.0);
}

TEST(Accuracy, TiesGoToLowestClass) {
  const SoftmaxClassifier m = SoftmaxClassifier::zeros(4, 2);
  EXPECT_EQ(accuracy(m, labeled(Matrix::Ones(2, 3), {0, 0, 0})), 1.0);
}

TEST(Accuracy, LogitShiftInvariance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen gen(seed);
    SoftmaxClassifier m = SoftmaxClassifier::zeros(4, 6);
    m.weights = gen.matrix(4, 6);
    m.bias = gen.vector(4);
    const Matrix x = gen.matrix(6, 30);
    std::vector<int> labels(30);
    for (int& l : labels) l = static_cast<int>(gen.integer(0, 3));
    const double before = accuracy(m, labeled(x, labels));
    m.bias.array() += gen.real(-5.0, 5.0);
    const double after = accuracy(m, labeled(x, labels));
    EXPECT_EQ(before, after);
    EXPECT_GE(before, 0.0);
    EXPECT_LE(before, 1.0);
  }
}

TEST(Accuracy, RejectsEmptyOrBadLabels) {
  const SoftmaxClassifier m = axis_model(3);
  EXPECT_THROW(accuracy(m, labeled(Matrix(3, 0), {})), std::invalid_argument);
  EXPECT_THROW(accuracy(m, labeled(Matrix::Identity(3, 3), {0, 1, 3})), std::invalid_argument);
  EXPECT_THROW(accuracy(m, labeled(Matrix::Identity(3, 3), {0, 1})), std::invalid_argument);
}

TEST(ModelTagNames, Strings) {
  EXPECT_EQ(to_string(ModelTag::kOriginal), "original");
  EXPECT_EQ(to_string(ModelTag::kFineTuned), "fine_tuned");
  EXPECT_EQ(to_string(ModelTag::kGolden), "golden");
  EXPECT_EQ(to_string(ModelTag::kEditedFineTuned), "edited_fine_tuned");
}

}  // namespace
}  // namespace unlearn_lab
