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

#include "structmia/conv_denoiser.h"

#include <cmath>
#include <fstream>

#include <gtest/gtest.h>

#include "structmia/error.h"
#include "test_util.h"

namespace structmia {
namespace {

using testing::RandomImage;
using testing::RandomRaster;
using testing::TempDir;

ConvNetArch TinyArch(int side = 8) {
  ConvNetArch a;
  a.height = a.width = side;
  a.channels = 3;
  a.c1 = 3;
  a.c2 = 4;
  a.c3 = 4;
  a.num_classes = 2;
  return a;
}

TEST(ConvDenoiser, ParameterCountMatchesLayout) {
  const ConvNetArch a = TinyArch();
  // conv weights + biases, stage time maps (8 per channel) and class tables.
  auto conv = [](int in, int out) { return 9 * in * out + out; };
  const std::size_t want = conv(3, 3) + conv(3, 4) + conv(4, 4) + conv(4, 4) +
                           conv(4, 4) + conv(4, 4) + conv(4, 3) + conv(3, 3) +
                           8 * (3 + 4 + 4 + 4 + 4 + 4 + 3) +
                           3 * (3 + 4 + 4 + 4 + 4 + 4 + 3);
  EXPECT_EQ(ParameterCount(a), want);
  EXPECT_EQ(ConvDenoiser(a, 1).parameters().size(), want);
}

TEST(ConvDenoiser, GradientMatchesCentralDifferences) {
  ConvDenoiser net(TinyArch(), 3);
  // Give the class tables non-zero values so their gradients are exercised
  // through a non-trivial forward pass.
  auto p = net.mutable_parameters();
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<float> u(-0.3f, 0.3f);
  for (std::size_t i = p.size() - 3 * 26; i < p.size(); ++i) p[i] = u(gen);

  const Raster x = RandomRaster({8, 8, 3}, 2, -1.0, 1.0);
  const Raster target = RandomRaster({8, 8, 3}, 3, -1.0, 1.0);
  const int token = 1;
  std::vector<float> grad(p.size(), 0.0f);
  net.LossAndGradient(x, 40, token, target, grad);

  std::vector<float> scratch(p.size());
  int checked = 0, agreed = 0;
  for (std::size_t i = 0; i < p.size(); i += 7) {
    const float saved = p[i];
    const float h = 1e-2f;
    p[i] = saved + h;
    const double up = net.LossAndGradient(x, 40, token, target, scratch);
    p[i] = saved - h;
    const double down = net.LossAndGradient(x, 40, token, target, scratch);
    p[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    ++checked;
    // Float forward passes and LeakyReLU kinks allow a little slack.
    agreed += std::abs(fd - grad[i]) <= 2e-3 + 0.05 * std::abs(fd);
  }
  EXPECT_GE(agreed, checked * 95 / 100) << agreed << "/" << checked;
}

TEST(ConvDenoiser, GradientAccumulates) {
  const ConvDenoiser net(TinyArch(), 4);
  const Raster x = RandomRaster({8, 8, 3}, 5);
  const Raster target = RandomRaster({8, 8, 3}, 6);
  std::vector<float> once(net.parameters().size(), 0.0f), twice = once;
  net.LossAndGradient(x, 10, 0, target, once);
  net.LossAndGradient(x, 10, 0, target, twice);
  net.LossAndGradient(x, 10, 0, target, twice);
  for (std::size_t i = 0; i < once.size(); ++i) {
    ASSERT_NEAR(twice[i], 2.0f * once[i], 1e-6f + 1e-5f * std::abs(once[i]));
  }
}

TEST(ConvDenoiser, InitIsDeterministicAndSeedDependent) {
  const ConvDenoiser a(TinyArch(), 7), b(TinyArch(), 7), c(TinyArch(), 8);
  EXPECT_TRUE(std::equal(a.parameters().begin(), a.parameters().end(),
                         b.parameters().begin()));
  EXPECT_FALSE(std::equal(a.parameters().begin(), a.parameters().end(),
                          c.parameters().begin()));
}

TEST(ConvDenoiser, PredictShapeConditionsAndZeroStep) {
  const ConvDenoiser net(TinyArch(), 9);
  const Raster x = RandomRaster({8, 8, 3}, 1);
  const Raster out = net.Predict(x, 0, Condition::Unconditional());
  EXPECT_EQ(out.shape(), x.shape());
  for (double v : out.data()) EXPECT_TRUE(std::isfinite(v));
  EXPECT_NO_THROW(net.Predict(x, 5, Condition::Class(1)));
  EXPECT_THROW(net.Predict(x, 5, Condition::Class(2)), ParameterError);
  EXPECT_THROW(net.Predict(RandomRaster({16, 16, 3}, 1), 5, Condition::Unconditional()),
               ParameterError);
  EXPECT_EQ(net.null_token(), 2);
}

TEST(ConvDenoiser, SaveLoadRoundTrip) {
  const auto dir = TempDir("conv_rt");
  const ConvDenoiser net(TinyArch(16), 10);
  net.Save(dir / "sub" / "m.bin");
  const ConvDenoiser back = ConvDenoiser::Load(dir / "sub" / "m.bin");
  EXPECT_EQ(back.arch(), net.arch());
  EXPECT_TRUE(std::equal(net.parameters().begin(), net.parameters().end(),
                         back.parameters().begin()));
  const Raster x = RandomRaster({16, 16, 3}, 2);
  EXPECT_EQ(net.Predict(x, 30, Condition::Class(0)),
            back.Predict(x, 30, Condition::Class(0)));
}

TEST(ConvDenoiser, LoadErrors) {
  const auto dir = TempDir("conv_err");
  EXPECT_THROW(ConvDenoiser::Load(dir / "none.bin"), MissingArtifactError);
  {
    std::ofstream out(dir / "junk.bin", std::ios::binary);
    out << "NOTAMODELFILE";
  }
  EXPECT_THROW(ConvDenoiser::Load(dir / "junk.bin"), FormatError);
  ConvDenoiser(TinyArch(), 1).Save(dir / "ok.bin");
  const auto size = std::filesystem::file_size(dir / "ok.bin");
  std::filesystem::resize_file(dir / "ok.bin", size - 4);
  EXPECT_THROW(ConvDenoiser::Load(dir / "ok.bin"), FormatError);
}

std::vector<Image> TrainImages(int n) {
  std::vector<Image> out;
  for (int i = 0; i < n; ++i) out.push_back(RandomImage({16, 16, 3}, 100 + i));
  return out;
}

TEST(ConvDenoiser, TrainingIsDeterministicAndReducesLoss) {
  const Schedule s = Schedule::Linear();
  TrainConfig cfg;
  cfg.epochs = 12;
  cfg.batch = 4;
  cfg.seed = 5;
  const auto images = TrainImages(8);
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1};
  ConvDenoiser a(TinyArch(16), 1), b(TinyArch(16), 1);
  int calls = 0;
  const auto ha = a.Train(images, labels, s, cfg,
                          [&](const EpochReport& r, const ConvDenoiser&) {
                            EXPECT_EQ(r.epoch, ++calls);
                          });
  const auto hb = b.Train(images, labels, s, cfg);
  EXPECT_EQ(calls, 12);
  ASSERT_EQ(ha.size(), 12u);
  for (std::size_t i = 0; i < ha.size(); ++i) EXPECT_EQ(ha[i].mean_loss, hb[i].mean_loss);
  EXPECT_TRUE(std::equal(a.parameters().begin(), a.parameters().end(),
                         b.parameters().begin()));
  const double first = (ha[0].mean_loss + ha[1].mean_loss + ha[2].mean_loss) / 3;
  const double last = (ha[9].mean_loss + ha[10].mean_loss + ha[11].mean_loss) / 3;
  EXPECT_LT(last, first);
}

TEST(ConvDenoiser, DivergenceRaisesTrainingErrorWithEpoch) {
  const Schedule s = Schedule::Linear();
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.lr = 1e6;
  cfg.batch = 2;
  ConvDenoiser net(TinyArch(16), 1);
  try {
    net.Train(TrainImages(4), {0, 1, 0, 1}, s, cfg);
    FAIL() << "expected divergence";
  } catch (const TrainingError& e) {
    EXPECT_GE(e.epoch(), 1);
    EXPECT_LE(e.epoch(), 50);
  }
}

TEST(ConvDenoiser, ConfigValidation) {
  const Schedule s = Schedule::Linear();
  TrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_THROW(cfg.Validate(s), ParameterError);
  cfg = TrainConfig();
  cfg.momentum = 1.0;
  EXPECT_THROW(cfg.Validate(s), ParameterError);
  ConvNetArch a = TinyArch();
  a.height = 12;
  EXPECT_THROW(a.Validate(), ParameterError);
  ConvDenoiser net(TinyArch(16), 1);
  EXPECT_THROW(net.Train(TrainImages(2), {0, 5}, s, TrainConfig()), ParameterError);
}

}  // namespace
}  // namespace structmia
