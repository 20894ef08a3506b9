// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structmia/metrics.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "structmia/error.h"

namespace structmia {
namespace {

TEST(Roc, PerfectSeparation) {
  const std::vector<double> m(5, 1.0), h(7, 0.0);
  const RocSummary r = Roc(m, h);
  EXPECT_EQ(r.auc, 1.0);
  EXPECT_EQ(r.asr, 1.0);
  EXPECT_EQ(r.tpr_at_1pct, 1.0);
  EXPECT_EQ(r.tpr_at_0p1pct, 1.0);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  // Score == tau is a nonmember, so the separating threshold is the
  // holdout score itself.
  EXPECT_EQ(r.asr_tau, 0.0);
}

TEST(Roc, HandWorkedExample) {
  const std::vector<double> m = {0.9, 0.8, 0.4}, h = {0.5, 0.3, 0.1};
  const RocSummary r = Roc(m, h);
  EXPECT_DOUBLE_EQ(r.auc, 8.0 / 9.0);
  EXPECT_DOUBLE_EQ(r.asr, 5.0 / 6.0);
  EXPECT_EQ(r.asr_tau, 0.5);  // first threshold reaching 5 correct
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.tpr_at_1pct, 2.0 / 3.0);
  ASSERT_EQ(r.curve.size(), 8u);
  EXPECT_EQ(r.curve.front().threshold, std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.curve.back().threshold, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.curve.front().tpr, 0.0);
  EXPECT_EQ(r.curve.back().fpr, 1.0);
}

TEST(Roc, TiesCountHalf) {
  const std::vector<double> m = {1.0, 1.0}, h = {1.0, 0.0};
  EXPECT_DOUBLE_EQ(Roc(m, h).auc, 0.75);
  const std::vector<double> all(4, 0.3);
  const RocSummary r = Roc(all, all);
  EXPECT_DOUBLE_EQ(r.auc, 0.5);
  EXPECT_DOUBLE_EQ(r.asr, 0.5);
  // Nothing exceeds the top threshold: no positive calls, precision 0.
  EXPECT_EQ(r.precision, 0.0);
}

TEST(Roc, InvertedScores) {
  const std::vector<double> m = {0.0, 0.1}, h = {0.5, 0.6};
  const RocSummary r = Roc(m, h);
  EXPECT_EQ(r.auc, 0.0);
  // Calling everything a nonmember is right half the time.
  EXPECT_EQ(r.asr, 0.5);
  EXPECT_EQ(r.tpr_at_1pct, 0.0);
}

TEST(Roc, MatchesPairwiseOracleOnRandomSets) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 500);
    const int k = 1 + static_cast<int>(gen() % 500);
    // Coarse grids on some trials to force many ties.
    const bool coarse = trial % 3 == 0;
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> m(n), h(k);
    for (double& v : m) v = coarse ? std::round(nd(gen) * 3) : nd(gen) + 0.5;
    for (double& v : h) v = coarse ? std::round(nd(gen) * 3) : nd(gen);
    const RocSummary r = Roc(m, h);
    ASSERT_NEAR(r.auc, AucPairwiseOracle(m, h), 1e-12) << trial;
    // ASR against a direct sweep over the same candidate thresholds.
    double best = 0.0;
    for (const RocPoint& p : r.curve) {
      best = std::max(best, (p.tpr * n + (1.0 - p.fpr) * k) / (n + k));
    }
    ASSERT_NEAR(r.asr, best, 1e-12);
    ASSERT_GE(r.asr, 0.5 - 1e-12);
  }
}

TEST(Roc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> m(200), h(150);
  for (double& v : m) v = u(gen) + 0.2;
  for (double& v : h) v = u(gen);
  std::vector<double> m2 = m, h2 = h;
  for (double& v : m2) v = std::exp(3 * v) - 7;
  for (double& v : h2) v = std::exp(3 * v) - 7;
  const RocSummary a = Roc(m, h), b = Roc(m2, h2);
  EXPECT_EQ(a.auc, b.auc);
  EXPECT_EQ(a.asr, b.asr);
  EXPECT_EQ(a.tpr_at_1pct, b.tpr_at_1pct);
  EXPECT_EQ(a.precision, b.precision);
  EXPECT_EQ(a.recall, b.recall);
}

TEST(Roc, SwappingRolesComplementsAuc) {
  const std::vector<double> m = {0.3, 0.9, 0.5, 0.5}, h = {0.1, 0.5, 0.7};
  EXPECT_DOUBLE_EQ(Roc(m, h).auc + Roc(h, m).auc, 1.0);
}

TEST(Roc, CurveIsMonotone) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  std::vector<double> m(100), h(100);
  for (double& v : m) v = nd(gen);
  for (double& v : h) v = nd(gen);
  const RocSummary r = Roc(m, h);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    EXPECT_GE(r.curve[i].fpr, r.curve[i - 1].fpr);
    EXPECT_GE(r.curve[i].tpr, r.curve[i - 1].tpr);
    EXPECT_LT(r.curve[i].threshold, r.curve[i - 1].threshold);
  }
}

TEST(Roc, Errors) {
  const std::vector<double> some = {1.0}, none;
  EXPECT_THROW(Roc(none, some), ParameterError);
  EXPECT_THROW(Roc(some, none), ParameterError);
  const std::vector<double> nan = {std::nan("")};
  EXPECT_THROW(Roc(nan, some), ParameterError);
}

TEST(TprAtFpr, TakesBestPointUnderBudget) {
  const std::vector<RocPoint> curve = {
      {3, 0.0, 0.0}, {2, 0.0, 0.4}, {1, 0.02, 0.9}, {0, 1.0, 1.0}};
  EXPECT_EQ(TprAtFpr(curve, 0.01), 0.4);
  EXPECT_EQ(TprAtFpr(curve, 0.02), 0.9);
  EXPECT_EQ(TprAtFpr(curve, 1.0), 1.0);
}

TEST(RocSvg, DeterministicAndWellFormed) {
  const std::vector<double> m = {0.9, 0.8, 0.4}, h = {0.5, 0.3, 0.1};
  const std::vector<RocSeries> s = {{"a", Roc(m, h).curve}};
  const std::string svg = RenderRocSvg(s, "t");
  EXPECT_EQ(svg, RenderRocSvg(s, "t"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace structmia
