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

#include "structmia/distortions.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "structmia/error.h"
#include "structmia/rng.h"

namespace structmia {

Image SaltPepper(const Image& img, double fraction, std::uint64_t seed,
                 std::uint64_t id) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ParameterError("salt-and-pepper fraction must be in [0, 1]");
  }
  const Shape s = img.shape();
  const std::size_t pixels = static_cast<std::size_t>(s.height) * s.width;
  const auto count = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(pixels)));
  Raster out = img.raster();
  if (count == 0) return Image::FromRaster(std::move(out));

  Stream rng(seed, id, StreamTag::kSaltPepper);
  std::vector<std::size_t> order(pixels);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `count` slots become a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.Below(pixels - i);
    std::swap(order[i], order[j]);
    const double value = rng.Coin() ? 1.0 : 0.0;
    for (int c = 0; c < s.channels; ++c) {
      out.data()[order[i] * s.channels + c] = value;
    }
  }
  return Image::FromRaster(std::move(out));
}

Image Rotate(const Image& img, double degrees) {
  const Shape s = img.shape();
  const double theta = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (s.width - 1) / 2.0;
  const double cy = (s.height - 1) / 2.0;
  Raster out(s, 0.0);
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      // Inverse map: where in the source does this output pixel come from.
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = cx + cs * dx - sn * dy;
      const double sy = cy + sn * dx + cs * dy;
      if (sx < 0.0 || sy < 0.0 || sx > s.width - 1 || sy > s.height - 1) {
        continue;
      }
      const int x0 = std::min(static_cast<int>(sx), s.width - 1);
      const int y0 = std::min(static_cast<int>(sy), s.height - 1);
      const int x1 = std::min(x0 + 1, s.width - 1);
      const int y1 = std::min(y0 + 1, s.height - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < s.channels; ++c) {
        const double top = (1.0 - fx) * img.at(y0, x0, c) + fx * img.at(y0, x1, c);
        const double bottom =
            (1.0 - fx) * img.at(y1, x0, c) + fx * img.at(y1, x1, c);
        out.at(y, x, c) = (1.0 - fy) * top + fy * bottom;
      }
    }
  }
  return Image::Clamped(out);
}

Image ScaleSaturation(const Image& img, double factor) {
  const Shape s = img.shape();
  if (s.channels != 3) {
    throw ParameterError("saturation needs an RGB image, got " + ToString(s));
  }
  Raster out = img.raster();
  auto d = out.data();
  for (std::size_t i = 0; i < d.size(); i += 3) {
    const double gray = 0.299 * d[i] + 0.587 * d[i + 1] + 0.114 * d[i + 2];
    for (int c = 0; c < 3; ++c) d[i + c] = gray + factor * (d[i + c] - gray);
  }
  return Image::Clamped(out);
}

Image SaturationJitter(const Image& img, double delta, std::uint64_t seed,
                       std::uint64_t id) {
  Stream rng(seed, id, StreamTag::kSaturation);
  return ScaleSaturation(img, rng.Coin() ? 1.0 + delta : 1.0 - delta);
}

Image ScaleBrightness(const Image& img, double factor) {
  Raster out = img.raster();
  for (double& v : out.data()) v *= factor;
  return Image::Clamped(out);
}

Image BrightnessJitter(const Image& img, double delta, std::uint64_t seed,
                       std::uint64_t id) {
  Stream rng(seed, id, StreamTag::kBrightness);
  return ScaleBrightness(img, rng.Coin() ? 1.0 + delta : 1.0 - delta);
}

std::string_view DistortionName(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::kNone: return "none";
    case DistortionKind::kSaltPepper: return "salt_pepper";
    case DistortionKind::kRotation: return "rotation";
    case DistortionKind::kSaturation: return "saturation";
    case DistortionKind::kBrightness: return "brightness";
  }
  return "unknown";
}

DistortionKind ParseDistortion(std::string_view name) {
  for (DistortionKind k :
       {DistortionKind::kNone, DistortionKind::kSaltPepper,
        DistortionKind::kRotation, DistortionKind::kSaturation,
        DistortionKind::kBrightness}) {
    if (DistortionName(k) == name) return k;
  }
  throw ParameterError("unknown distortion '" + std::string(name) + "'");
}

void DistortionSpec::Validate() const {
  bool ok = true;
  switch (kind) {
    case DistortionKind::kNone: break;
    case DistortionKind::kSaltPepper:
    case DistortionKind::kSaturation:
    case DistortionKind::kBrightness:
      ok = magnitude >= 0.0 && magnitude <= 1.0;
      break;
    case DistortionKind::kRotation:
      ok = magnitude >= -180.0 && magnitude <= 180.0;
      break;
  }
  if (!ok) {
    throw ParameterError("distortion magnitude out of range: " + ToString());
  }
}

std::string DistortionSpec::ToString() const {
  std::ostringstream os;
  os << DistortionName(kind);
  if (kind != DistortionKind::kNone) {
    os << "(" << magnitude << ",seed=" << seed << ")";
  }
  return os.str();
}

DistortionSpec DefaultDistortion(DistortionKind kind, std::uint64_t seed) {
  switch (kind) {
    case DistortionKind::kNone: return {kind, 0.0, seed};
    case DistortionKind::kSaltPepper: return {kind, 0.10, seed};
    case DistortionKind::kRotation: return {kind, 10.0, seed};
    case DistortionKind::kSaturation:
    case DistortionKind::kBrightness: return {kind, 0.5, seed};
  }
  return {kind, 0.0, seed};
}

Image ApplyDistortion(const DistortionSpec& spec, const Image& img,
                      std::uint64_t id) {
  spec.Validate();
  switch (spec.kind) {
    case DistortionKind::kNone: return img;
    case DistortionKind::kSaltPepper:
      return SaltPepper(img, spec.magnitude, spec.seed, id);
    case DistortionKind::kRotation: return Rotate(img, spec.magnitude);
    case DistortionKind::kSaturation:
      return SaturationJitter(img, spec.magnitude, spec.seed, id);
    case DistortionKind::kBrightness:
      return BrightnessJitter(img, spec.magnitude, spec.seed, id);
  }
  return img;
}

}  // namespace structmia
