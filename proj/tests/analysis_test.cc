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

#include "structmia/analysis.h"

#include <gtest/gtest.h>

#include "structmia/error.h"
#include "structmia/ssim.h"
#include "test_util.h"

namespace structmia {
namespace {

using testing::RandomImage;

const Schedule& Sched() {
  static const Schedule s = Schedule::Linear();
  return s;
}

std::vector<Sample> Samples(int n, int first_seed) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({i, RandomImage({16, 16, 3}, first_seed + i), i % 2});
  }
  return out;
}

TEST(UniformGrid, IncludesBothEnds) {
  EXPECT_EQ(UniformGrid(200, 50), (std::vector<int>{0, 50, 100, 150, 200}));
  EXPECT_EQ(UniformGrid(0, 50), (std::vector<int>{0}));
  EXPECT_EQ(UniformGrid(800, 50).size(), 17u);
  EXPECT_THROW(UniformGrid(100, 0), ParameterError);
}

TEST(SsimTable, NullModelClosedForm) {
  const ConstantDenoiser null(0.0);
  const TargetModel target{null, Sched()};
  const auto samples = Samples(3, 10);
  const SsimTable table = ComputeSsimTable(samples, target, {0, 100, 250});
  EXPECT_EQ(table.t, (std::vector<int>{0, 100, 250}));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(table.by_sample[i][0], 1.0);
    for (int c : {1, 2}) {
      Raster atten = samples[i].image.raster();
      for (double& v : atten.data()) v *= Sched().sqrt_alpha_bar(table.t[c]);
      EXPECT_NEAR(table.by_sample[i][c], Ssim(samples[i].image.raster(), atten), 1e-9);
    }
  }
  EXPECT_THROW(table.Mean(50), ParameterError);
}

TEST(SsimTable, MatchesStructuralScoreOnTheSameGrid) {
  std::vector<Image> train;
  for (int i = 0; i < 3; ++i) train.push_back(RandomImage({16, 16, 3}, 30 + i));
  const OracleDenoiser oracle(train, {0, 1, 0}, 2, Sched());
  const TargetModel target{oracle, Sched()};
  const auto samples = Samples(4, 30);
  const SsimTable table = ComputeSsimTable(samples, target, {0, 50, 100});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(table.by_sample[i][2],
              StructuralScore(samples[i].image, target.ContextFor(samples[i]),
                              AttackConfig()));
  }
}

TEST(DecreaseRate, FiniteDifferenceOfMeans) {
  const ConstantDenoiser null(0.0);
  const TargetModel target{null, Sched()};
  const auto samples = Samples(2, 40);
  const auto v = DecreaseRateCurve(samples, target, {0, 100}, 50);
  const SsimTable table = ComputeSsimTable(samples, target, {0, 50, 100, 150});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].t, 0);
  EXPECT_NEAR(v[0].value, (table.Mean(50) - 1.0) / 50.0, 1e-15);
  EXPECT_NEAR(v[1].value, (table.Mean(150) - table.Mean(100)) / 50.0, 1e-15);
  EXPECT_LT(v[1].value, 0.0);
  EXPECT_THROW(DecreaseRate(table, {0}, 0), ParameterError);
}

TEST(DeltaSsim, IdenticalSetsGiveZeroAndSwapNegates) {
  std::vector<Image> train;
  for (int i = 0; i < 3; ++i) train.push_back(RandomImage({16, 16, 3}, 50 + i));
  const OracleDenoiser oracle(train, {0, 1, 0}, 2, Sched());
  const TargetModel target{oracle, Sched()};
  const auto a = Samples(3, 50), b = Samples(3, 70);
  const std::vector<int> grid = {0, 50, 100, 150};
  for (const CurvePoint& p : DeltaSsimCurve(a, a, target, grid)) EXPECT_EQ(p.value, 0.0);
  const auto ab = DeltaSsimCurve(a, b, target, grid);
  const auto ba = DeltaSsimCurve(b, a, target, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(ab[i].value, -ba[i].value);
  EXPECT_EQ(ab[0].value, 0.0);
  // Members of the oracle's training set keep more structure.
  EXPECT_GT(ab[1].value, 0.0);
}

TEST(SsimTable, WorkerCountDoesNotChangeResults) {
  const ConstantDenoiser stub(0.1);
  const TargetModel target{stub, Sched()};
  const auto samples = Samples(7, 80);
  const auto one = ComputeSsimTable(samples, target, {0, 20, 40}, 1);
  const auto many = ComputeSsimTable(samples, target, {0, 20, 40}, 4);
  EXPECT_EQ(one.by_sample, many.by_sample);
}

TEST(PeakOf, FirstMaximum) {
  const std::vector<CurvePoint> c = {{0, 0.0}, {50, 0.3}, {100, 0.3}, {150, 0.1}};
  EXPECT_EQ(PeakOf(c).t, 50);
  EXPECT_THROW(PeakOf({}), ParameterError);
}

TEST(Analysis, Errors) {
  const ConstantDenoiser null(0.0);
  const TargetModel target{null, Sched()};
  EXPECT_THROW(ComputeSsimTable({}, target, {0, 50}), ParameterError);
  EXPECT_THROW(ComputeSsimTable(Samples(1, 1), target, {0, 1001}), ParameterError);
}

}  // namespace
}  // namespace structmia
