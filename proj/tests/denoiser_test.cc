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

#include "structmia/denoiser.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "structmia/error.h"
#include "oracles.h"
#include "test_util.h"

namespace structmia {
namespace {

using testing::BruteForceEps;
using testing::RandomImage;
using testing::RandomRaster;

TEST(OracleDenoiser, MatchesBruteForceMixtureOnTwoPointSets) {
  const Schedule schedule = Schedule::Linear();
  const Shape shape{16, 16, 1};
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Image> train = {RandomImage(shape, 100 + trial),
                                      RandomImage(shape, 200 + trial)};
    const OracleDenoiser oracle(train, {}, 0, schedule);
    // Large t keeps both mixture weights representable in the brute force.
    const int t = 700 + static_cast<int>(gen() % 300);
    const double sa = schedule.sqrt_alpha_bar(t);
    const double sb = schedule.sqrt_one_minus_alpha_bar(t);
    // Query between the two components so neither weight is negligible.
    Raster x_t(shape);
    const Raster noise = RandomRaster(shape, 300 + trial, -1.0, 1.0);
    for (std::size_t k = 0; k < x_t.size(); ++k) {
      x_t.data()[k] = sa * 0.5 * (train[0].data()[k] + train[1].data()[k]) +
                      sb * noise.data()[k];
    }
    const Raster eps = oracle.Predict(x_t, t, Condition::Unconditional());
    const auto ref = BruteForceEps(train, x_t, schedule.alpha_bar(t));
    for (std::size_t k = 0; k < eps.size(); ++k) {
      ASSERT_NEAR(eps.data()[k], static_cast<double>(ref[k]), 1e-9) << trial;
    }
  }
}

TEST(OracleDenoiser, SingleImagePosteriorIsThatImage) {
  const Schedule schedule = Schedule::Linear();
  const Image x = RandomImage({16, 16, 3}, 1);
  const OracleDenoiser oracle({x}, {}, 0, schedule);
  const Raster x_t = RandomRaster({16, 16, 3}, 2, -2.0, 2.0);
  for (int t : {1, 10, 500, 1000}) {
    const Raster eps = oracle.Predict(x_t, t, Condition::Unconditional());
    for (std::size_t k = 0; k < eps.size(); ++k) {
      const double want = (x_t.data()[k] - schedule.sqrt_alpha_bar(t) * x.data()[k]) /
                          schedule.sqrt_one_minus_alpha_bar(t);
      ASSERT_NEAR(eps.data()[k], want, 1e-9 * (1.0 + std::abs(want)));
    }
  }
}

TEST(OracleDenoiser, WeightsAreAProbabilityVector) {
  const Schedule schedule = Schedule::Linear();
  std::vector<Image> train;
  for (int i = 0; i < 6; ++i) train.push_back(RandomImage({16, 16, 1}, 40 + i));
  const OracleDenoiser oracle(train, {0, 1, 0, 1, 0, 1}, 2, schedule);
  const Raster x_t = RandomRaster({16, 16, 1}, 9);
  for (int t : {1, 5, 100, 1000}) {
    const auto w = oracle.PosteriorWeights(x_t, t, Condition::Unconditional());
    double sum = 0.0;
    for (double v : w) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // Conditioning admits only the class-1 rows.
    const auto wc = oracle.PosteriorWeights(x_t, t, Condition::Class(1));
    ASSERT_EQ(wc.size(), train.size() / 2);
    double mass1 = 0.0;
    for (double v : wc) mass1 += v;
    EXPECT_NEAR(mass1, 1.0, 1e-12);
  }
}

TEST(OracleDenoiser, StableWhenAllExponentsAreHuge) {
  const Schedule schedule = Schedule::Linear();
  const OracleDenoiser oracle({testing::ConstantImage({16, 16, 1}, 0.0),
                               testing::ConstantImage({16, 16, 1}, 1.0)},
                              {}, 0, schedule);
  const Raster far({16, 16, 1}, 1e4);
  const Raster eps = oracle.Predict(far, 1, Condition::Unconditional());
  for (double v : eps.data()) EXPECT_TRUE(std::isfinite(v));
}

TEST(OracleDenoiser, Errors) {
  const Schedule schedule = Schedule::Linear();
  const Image x = RandomImage({16, 16, 1}, 3);
  const OracleDenoiser oracle({x, x}, {0, 0}, 2, schedule);
  EXPECT_THROW(oracle.Predict(x.raster(), 0, Condition::Unconditional()), DomainError);
  EXPECT_THROW(oracle.Predict(x.raster(), 10, Condition::Class(1)), ParameterError);
  EXPECT_THROW(oracle.Predict(x.raster(), 10, Condition::Class(5)), ParameterError);
  EXPECT_THROW(oracle.Predict(Raster({16, 17, 1}), 10, Condition::Unconditional()),
               ParameterError);
  EXPECT_THROW(OracleDenoiser({}, {}, 0, schedule), ParameterError);
  EXPECT_THROW(Condition::Class(-1), ParameterError);
}

TEST(PredictAtStep, SubstitutesStepOneForUndefinedZero) {
  const Schedule schedule = Schedule::Linear();
  const Image x = RandomImage({16, 16, 1}, 3);
  const OracleDenoiser oracle({x, RandomImage({16, 16, 1}, 4)}, {}, 0, schedule);
  const Raster q = RandomRaster({16, 16, 1}, 5);
  EXPECT_EQ(PredictAtStep(oracle, q, 0, Condition::Unconditional()),
            oracle.Predict(q, 1, Condition::Unconditional()));
  const ConstantDenoiser stub(0.25);
  EXPECT_EQ(PredictAtStep(stub, q, 0, Condition::Unconditional()),
            stub.Predict(q, 0, Condition::Unconditional()));
}

// Returns 0.2 unconditionally and 0.6 under any class condition.
class TwoValueStub final : public EpsilonModel {
 public:
  Raster Predict(const Raster& x_t, int, const Condition& cond) const override {
    return Raster(x_t.shape(), cond.is_class() ? 0.6 : 0.2);
  }
  bool DefinedAtZero() const override { return true; }
  int num_classes() const override { return 2; }
  std::string Describe() const override { return "two-value"; }
};

TEST(GuidedPredict, ScalarProbe) {
  const TwoValueStub stub;
  const Raster q({16, 16, 1}, 0.0);
  const Raster g = GuidedPredict(stub, q, 5, Condition::Class(0), 2.0);
  for (double v : g.data()) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(GuidedPredict, ZeroAndOneAreBitExactBranches) {
  const Schedule schedule = Schedule::Linear();
  std::vector<Image> train;
  for (int i = 0; i < 4; ++i) train.push_back(RandomImage({16, 16, 3}, 60 + i));
  const OracleDenoiser oracle(train, {0, 1, 0, 1}, 2, schedule);
  const Raster q = RandomRaster({16, 16, 3}, 7, -1.0, 2.0);
  for (int t : {1, 50, 400}) {
    const Raster u = oracle.Predict(q, t, Condition::Unconditional());
    const Raster c = oracle.Predict(q, t, Condition::Class(1));
    EXPECT_EQ(GuidedPredict(oracle, q, t, Condition::Class(1), 0.0), u);
    EXPECT_EQ(GuidedPredict(oracle, q, t, Condition::Class(1), 1.0), c);
    EXPECT_EQ(PredictNoise(oracle, q, t, Condition::Class(1), 0.0), u);
    EXPECT_EQ(PredictNoise(oracle, q, t, Condition::Class(1), 1.0), c);
    EXPECT_EQ(PredictNoise(oracle, q, t, Condition::Unconditional(), 3.0), u);
  }
  EXPECT_THROW(GuidedPredict(oracle, q, 5, Condition::Unconditional(), 2.0),
               ParameterError);
}

TEST(GuidedPredict, LinearInGamma) {
  const Schedule schedule = Schedule::Linear();
  std::vector<Image> train;
  for (int i = 0; i < 4; ++i) train.push_back(RandomImage({16, 16, 1}, 80 + i));
  const OracleDenoiser oracle(train, {0, 1, 0, 1}, 2, schedule);
  const Raster q = RandomRaster({16, 16, 1}, 8);
  const Raster u = oracle.Predict(q, 30, Condition::Unconditional());
  const Raster c = oracle.Predict(q, 30, Condition::Class(0));
  const Raster g = GuidedPredict(oracle, q, 30, Condition::Class(0), 3.5);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(g.data()[k], u.data()[k] + 3.5 * (c.data()[k] - u.data()[k]), 1e-12);
  }
}

}  // namespace
}  // namespace structmia
