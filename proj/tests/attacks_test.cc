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

#include "structmia/attacks.h"

#include <cmath>

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

TEST(StructuralScore, MemberBeatsUnrelatedImageUnderSingleImageOracle) {
  const Image member = RandomImage({32, 32, 3}, 1);
  const Image other = RandomImage({32, 32, 3}, 2);
  const OracleDenoiser oracle({member}, {}, 0, Sched());
  const DdimContext ctx{oracle, Sched()};
  const AttackConfig cfg;
  const double s_member = StructuralScore(member, ctx, cfg);
  const double s_other = StructuralScore(other, ctx, cfg);
  EXPECT_GT(s_member, s_other);
  // The member's endpoint is an attenuated copy of itself (see the diffusion
  // tests for the small t=1 correction), so its score is near the
  // attenuation-only SSIM.
  Raster atten = member.raster();
  for (double& v : atten.data()) v *= Sched().sqrt_alpha_bar(100);
  EXPECT_NEAR(s_member, Ssim(member.raster(), atten), 0.02);
}

TEST(StructuralScore, NullModelScoreIsAttenuationSsim) {
  const ConstantDenoiser null(0.0);
  const DdimContext ctx{null, Sched()};
  const Image x = RandomImage({32, 32, 3}, 3);
  Raster atten = x.raster();
  for (double& v : atten.data()) v *= Sched().sqrt_alpha_bar(100);
  EXPECT_NEAR(StructuralScore(x, ctx, AttackConfig()), Ssim(x.raster(), atten), 1e-12);
}

TEST(NaiveLoss, CheatingModelScoresZero) {
  // A single-image oracle recovers the injected noise exactly.
  const Image x = RandomImage({16, 16, 3}, 4);
  const OracleDenoiser oracle({x}, {}, 0, Sched());
  const DdimContext ctx{oracle, Sched()};
  EXPECT_NEAR(NaiveLossScore(x, 0, ctx, 100, 7), 0.0, 1e-20);
  const Image y = RandomImage({16, 16, 3}, 5);
  EXPECT_LT(NaiveLossScore(y, 0, ctx, 100, 7), -1e-3);
}

TEST(NaiveLoss, ZeroModelScoresMinusNoiseEnergy) {
  const ConstantDenoiser zero(0.0);
  const DdimContext ctx{zero, Sched()};
  const Image x = RandomImage({32, 32, 3}, 6);
  EXPECT_NEAR(NaiveLossScore(x, 3, ctx, 100, 11), -1.0, 0.1);
}

TEST(NaiveLoss, DeterministicPerIdAndDrawsReduceSpread) {
  const ConstantDenoiser zero(0.0);
  const DdimContext ctx{zero, Sched()};
  const Image x = RandomImage({16, 16, 1}, 7);
  EXPECT_EQ(NaiveLossScore(x, 3, ctx, 100, 11), NaiveLossScore(x, 3, ctx, 100, 11));
  EXPECT_NE(NaiveLossScore(x, 3, ctx, 100, 11), NaiveLossScore(x, 4, ctx, 100, 11));
  auto spread = [&](int draws) {
    double s = 0.0, s2 = 0.0;
    const int n = 200;
    for (int id = 0; id < n; ++id) {
      const double v = NaiveLossScore(x, id, ctx, 100, 11, draws);
      s += v;
      s2 += v * v;
    }
    return s2 / n - (s / n) * (s / n);
  };
  EXPECT_LT(spread(8), 0.5 * spread(1));
  EXPECT_THROW(NaiveLossScore(x, 3, ctx, 0, 11), ParameterError);
  EXPECT_THROW(NaiveLossScore(x, 3, ctx, 100, 11, 0), ParameterError);
}

TEST(Pia, ConstantModelScoresZero) {
  const ConstantDenoiser stub(0.3);
  const DdimContext ctx{stub, Sched()};
  EXPECT_EQ(PiaScore(RandomImage({16, 16, 3}, 8), ctx, 100), 0.0);
}

TEST(Pia, L1NormalisedByElementCount) {
  // Output depends on t only: |0.5 - (-0.25)| per element.
  class StepModel final : public EpsilonModel {
   public:
    Raster Predict(const Raster& x, int t, const Condition&) const override {
      return Raster(x.shape(), t == 0 ? 0.5 : -0.25);
    }
    bool DefinedAtZero() const override { return true; }
    int num_classes() const override { return 0; }
    std::string Describe() const override { return "step"; }
  } model;
  const DdimContext ctx{model, Sched()};
  EXPECT_DOUBLE_EQ(PiaScore(RandomImage({16, 16, 3}, 9), ctx, 100), -0.75);
}

TEST(Secmi, StateIndependentModelScoresZero) {
  const ConstantDenoiser stub(-0.4);
  const DdimContext ctx{stub, Sched()};
  const double s = SecmiScore(RandomImage({16, 16, 3}, 10), ctx, 100, 50);
  EXPECT_NEAR(s, 0.0, 1e-28);
  EXPECT_LE(s, 0.0);
  EXPECT_THROW(SecmiScore(RandomImage({16, 16, 3}, 10), ctx, 100, 30), ParameterError);
}

TEST(Secmi, MemberScoresHigherUnderOracle) {
  std::vector<Image> train;
  for (int i = 0; i < 4; ++i) train.push_back(RandomImage({16, 16, 3}, 20 + i));
  const OracleDenoiser oracle(train, {}, 0, Sched());
  const DdimContext ctx{oracle, Sched()};
  EXPECT_GT(SecmiScore(train[0], ctx, 100, 50),
            SecmiScore(RandomImage({16, 16, 3}, 99), ctx, 100, 50));
}

TEST(Classify, StrictInequality) {
  EXPECT_FALSE(Classify(0.5, 0.5));
  EXPECT_TRUE(Classify(std::nextafter(0.5, 1.0), 0.5));
  EXPECT_FALSE(Classify(0.4, 0.5));
  EXPECT_TRUE(Classify(-1e300, -INFINITY));
  EXPECT_FALSE(Classify(1e300, INFINITY));
}

TEST(AttackConfig, Validation) {
  AttackConfig cfg;
  EXPECT_NO_THROW(cfg.Validate(Sched()));
  cfg.interval = 30;
  EXPECT_THROW(cfg.Validate(Sched()), ParameterError);
  cfg = AttackConfig();
  cfg.t_eval = 0;
  EXPECT_THROW(cfg.Validate(Sched()), ParameterError);
  cfg = AttackConfig();
  cfg.t_total = 2000;
  EXPECT_THROW(cfg.Validate(Sched()), ParameterError);
}

TEST(AttackNames, RoundTrip) {
  for (AttackKind k : {AttackKind::kStructural, AttackKind::kSecmi, AttackKind::kPia,
                       AttackKind::kNaiveLoss, AttackKind::kReconstruction}) {
    EXPECT_EQ(ParseAttack(AttackName(k)), k);
  }
  EXPECT_THROW(ParseAttack("loss"), ParameterError);
}

TEST(TargetModel, ConditionsOnLabelOnlyForClassAwareModels) {
  const Image x = RandomImage({16, 16, 3}, 1);
  const Sample s{0, x, 2};
  const ConstantDenoiser plain(0.0, 0), aware(0.0, 3);
  EXPECT_FALSE((TargetModel{plain, Sched()}.ContextFor(s).cond.is_class()));
  const DdimContext c = TargetModel{aware, Sched(), true, 2.5}.ContextFor(s);
  ASSERT_TRUE(c.cond.is_class());
  EXPECT_EQ(c.cond.label(), 2);
  EXPECT_EQ(c.gamma, 2.5);
  EXPECT_FALSE((TargetModel{aware, Sched(), false}.ContextFor(s).cond.is_class()));
}

class NanModel final : public EpsilonModel {
 public:
  Raster Predict(const Raster& x, int, const Condition&) const override {
    return Raster(x.shape(), std::nan(""));
  }
  bool DefinedAtZero() const override { return true; }
  int num_classes() const override { return 0; }
  std::string Describe() const override { return "nan"; }
};

TEST(ScoreImage, NonFiniteScoresAreNumericErrors) {
  const NanModel nan;
  const DdimContext ctx{nan, Sched()};
  const Image x = RandomImage({16, 16, 1}, 2);
  for (AttackKind k : {AttackKind::kNaiveLoss, AttackKind::kPia, AttackKind::kSecmi}) {
    EXPECT_THROW(ScoreImage(k, x, 0, ctx, AttackConfig()), NumericError);
  }
}

}  // namespace
}  // namespace structmia
