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

#include "structmia/image.h"

#include <fstream>

#include <gtest/gtest.h>

#include "structmia/dataset.h"
#include "structmia/error.h"
#include "test_util.h"

namespace structmia {
namespace {

using testing::RandomImage;
using testing::TempDir;

TEST(Quantize, RoundHalfUpAndClamp) {
  EXPECT_EQ(QuantizeToByte(0.5), 128);
  EXPECT_EQ(QuantizeToByte(0.0), 0);
  EXPECT_EQ(QuantizeToByte(1.0), 255);
  EXPECT_EQ(QuantizeToByte(-0.3), 0);
  EXPECT_EQ(QuantizeToByte(1.7), 255);
  EXPECT_EQ(QuantizeToByte(1.0 / 255.0), 1);
}

TEST(Image, FromRasterEnforcesRange) {
  const Shape s{16, 16, 1};
  EXPECT_THROW(Image::FromRaster(Raster(s, 1.5)), ParameterError);
  EXPECT_THROW(Image::FromRaster(Raster(s, -0.1)), ParameterError);
  EXPECT_NO_THROW(Image::FromRaster(Raster(s, 1.0)));
}

TEST(Image, ClampedMapsIntoUnitInterval) {
  Raster r({16, 16, 3}, 0.0);
  r.at(0, 0, 0) = 2.0;
  r.at(1, 0, 1) = -3.0;
  const Image img = Image::Clamped(r);
  EXPECT_EQ(img.at(0, 0, 0), 1.0);
  EXPECT_EQ(img.at(1, 0, 1), 0.0);
}

TEST(Image, RejectsTinyOrOddChannelShapes) {
  EXPECT_THROW(CheckImageShape({8, 16, 3}), ParameterError);
  EXPECT_THROW(CheckImageShape({16, 16, 2}), ParameterError);
  EXPECT_NO_THROW(CheckImageShape({16, 16, 1}));
}

TEST(ImageIo, AllZeroPgmLoadsAsZeros) {
  const auto dir = TempDir("pgm_zero");
  {
    std::ofstream out(dir / "z.pgm", std::ios::binary);
    out << "P5\n# comment\n16 16\n255\n" << std::string(256, '\0');
  }
  const Image img = LoadImage(dir / "z.pgm");
  EXPECT_EQ(img.shape(), (Shape{16, 16, 1}));
  for (double v : img.data()) EXPECT_EQ(v, 0.0);
}

TEST(ImageIo, PngRoundTripIsExactOnByteGrid) {
  const auto dir = TempDir("png_rt");
  for (int channels : {1, 3}) {
    Raster r({17, 20, channels});
    std::mt19937_64 gen(channels);
    for (double& v : r.data()) v = static_cast<double>(gen() % 256) / 255.0;
    const Image img = Image::FromRaster(r);
    SaveImage(img, dir / "a.png");
    EXPECT_EQ(LoadImage(dir / "a.png"), img);
  }
}

TEST(ImageIo, PgmRoundTripQuantizes) {
  const auto dir = TempDir("pgm_rt");
  const Image img = RandomImage({16, 20, 1}, 9);
  SaveImage(img, dir / "a.pgm");
  const Image back = LoadImage(dir / "a.pgm");
  EXPECT_LE(testing::MaxAbsDiff(img.raster(), back.raster()), 0.5 / 255.0 + 1e-12);
}

TEST(ImageIo, Errors) {
  const auto dir = TempDir("img_err");
  EXPECT_THROW(LoadImage(dir / "missing.png"), FormatError);
  {
    std::ofstream out(dir / "deep.pgm", std::ios::binary);
    out << "P5\n16 16\n65535\n" << std::string(512, '\0');
  }
  EXPECT_THROW(LoadImage(dir / "deep.pgm"), FormatError);
  {
    std::ofstream out(dir / "junk.png", std::ios::binary);
    out << "hello";
  }
  EXPECT_THROW(LoadImage(dir / "junk.png"), FormatError);
  EXPECT_THROW(SaveImage(RandomImage({16, 16, 1}, 1), dir / "no" / "such" / "x.pgm"),
               IoError);
  EXPECT_THROW(SaveImage(RandomImage({16, 16, 3}, 1), dir / "rgb.pgm"), ParameterError);
}

ShapesSpec SmallSpec() {
  ShapesSpec spec;
  spec.n_member = 6;
  spec.n_holdout = 5;
  spec.size = 16;
  spec.n_templates = 4;
  spec.seed = 77;
  return spec;
}

TEST(Dataset, SameSeedAndIdRegenerateIdentically) {
  const ShapesSpec spec = SmallSpec();
  const Dataset d = GenerateShapesDataset(spec);
  const Sample again = GenerateShapesSample(spec, 7);
  EXPECT_EQ(again.image, d.holdout[1].image);
  EXPECT_EQ(again.label, d.holdout[1].label);
  EXPECT_EQ(DatasetFingerprint(d), DatasetFingerprint(GenerateShapesDataset(spec)));
}

TEST(Dataset, SplitsIdsAndLabels) {
  const Dataset d = GenerateShapesDataset(SmallSpec());
  ASSERT_EQ(d.members.size(), 6u);
  ASSERT_EQ(d.holdout.size(), 5u);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(d.members[i].id, i);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(d.holdout[i].id, 6 + i);
  for (const Sample& s : d.members) {
    EXPECT_GE(s.label, 0);
    EXPECT_LT(s.label, 3);
    EXPECT_EQ(s.image.shape(), (Shape{16, 16, 3}));
  }
  EXPECT_EQ(d.MemberImages().size(), 6u);
  EXPECT_EQ(d.MemberLabels().size(), 6u);
}

TEST(Dataset, SeedChangesContent) {
  ShapesSpec a = SmallSpec(), b = SmallSpec();
  b.seed = 78;
  EXPECT_NE(DatasetFingerprint(GenerateShapesDataset(a)),
            DatasetFingerprint(GenerateShapesDataset(b)));
}

TEST(Dataset, WriteReadRoundTripIsStable) {
  const auto dir = TempDir("ds_rt");
  const Dataset d = GenerateShapesDataset(SmallSpec());
  WriteDataset(d, dir / "a");
  const Dataset back = ReadDataset(dir / "a" / "manifest.csv");
  ASSERT_EQ(back.members.size(), d.members.size());
  ASSERT_EQ(back.holdout.size(), d.holdout.size());
  EXPECT_EQ(back.num_classes, d.num_classes);
  for (std::size_t i = 0; i < d.members.size(); ++i) {
    EXPECT_EQ(back.members[i].label, d.members[i].label);
    EXPECT_LE(testing::MaxAbsDiff(back.members[i].image.raster(),
                                  d.members[i].image.raster()),
              0.5 / 255.0 + 1e-12);
  }
  // A re-run of the written dataset produces an identical manifest.
  WriteDataset(back, dir / "b");
  std::ifstream ma(dir / "a" / "manifest.csv"), mb(dir / "b" / "manifest.csv");
  std::string sa((std::istreambuf_iterator<char>(ma)), {});
  std::string sb((std::istreambuf_iterator<char>(mb)), {});
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(DatasetFingerprint(back),
            DatasetFingerprint(ReadDataset(dir / "b" / "manifest.csv")));
}

TEST(Dataset, Errors) {
  ShapesSpec spec = SmallSpec();
  spec.size = 8;
  EXPECT_THROW(GenerateShapesDataset(spec), ParameterError);
  spec = SmallSpec();
  spec.n_member = 1;
  EXPECT_THROW(GenerateShapesDataset(spec), ParameterError);
  EXPECT_THROW(GenerateShapesSample(SmallSpec(), 11), ParameterError);
  const auto dir = TempDir("ds_err");
  EXPECT_THROW(ReadDataset(dir / "manifest.csv"), MissingArtifactError);
  {
    std::ofstream out(dir / "manifest.csv");
    out << "id,split,class,path\n0,member,x,images/0.png\n";
  }
  EXPECT_THROW(ReadDataset(dir / "manifest.csv"), FormatError);
  EXPECT_THROW(ParseSplit("train"), ParameterError);
  EXPECT_EQ(ParseSplit(SplitName(Split::kHoldout)), Split::kHoldout);
}

}  // namespace
}  // namespace structmia
