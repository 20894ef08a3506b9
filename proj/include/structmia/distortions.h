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

#ifndef STRUCTMIA_DISTORTIONS_H_
#define STRUCTMIA_DISTORTIONS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "structmia/image.h"

namespace structmia {

// Image corruptions applied to attack queries. Random choices are drawn from
// a stream keyed by (seed, image id), so a given image is always distorted
// the same way regardless of processing order.

// Sets exactly round(fraction * H * W) distinct pixel positions to 0 or 1
// (all channels together, each value with probability 1/2). fraction must be
// in [0, 1].
Image SaltPepper(const Image& img, double fraction, std::uint64_t seed,
                 std::uint64_t id);

// Rotates by `degrees` counterclockwise (as displayed, rows running down)
// about ((W - 1) / 2, (H - 1) / 2). Bilinear sampling; positions whose source
// falls outside the frame are black.
Image Rotate(const Image& img, double degrees);
inline Image Rotate10Ccw(const Image& img) { return Rotate(img, 10.0); }

// Scales chroma: gray + factor * (rgb - gray) with
// gray = 0.299 R + 0.587 G + 0.114 B, clamped. RGB only.
Image ScaleSaturation(const Image& img, double factor);
// ScaleSaturation by 1 + delta or 1 - delta with equal probability.
Image SaturationJitter(const Image& img, double delta, std::uint64_t seed,
                       std::uint64_t id);

// Multiplies every channel by factor and clamps.
Image ScaleBrightness(const Image& img, double factor);
Image BrightnessJitter(const Image& img, double delta, std::uint64_t seed,
                       std::uint64_t id);

enum class DistortionKind { kNone, kSaltPepper, kRotation, kSaturation,
                            kBrightness };

std::string_view DistortionName(DistortionKind kind);
// Accepts the names DistortionName produces. Throws ParameterError.
DistortionKind ParseDistortion(std::string_view name);

struct DistortionSpec {
  DistortionKind kind = DistortionKind::kNone;
  // salt_pepper: fraction in [0, 1]; rotation: degrees in [-180, 180];
  // saturation and brightness: delta in [0, 1].
  double magnitude = 0.0;
  std::uint64_t seed = 0;

  void Validate() const;
  std::string ToString() const;
};

// The four robustness settings: 10% salt-and-pepper, 10 degree rotation,
// +-50% saturation, +-50% brightness.
DistortionSpec DefaultDistortion(DistortionKind kind, std::uint64_t seed);

Image ApplyDistortion(const DistortionSpec& spec, const Image& img,
                      std::uint64_t id);

}  // namespace structmia

#endif  // STRUCTMIA_DISTORTIONS_H_
