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

#ifndef STRUCTMIA_CODEC_H_
#define STRUCTMIA_CODEC_H_

#include <string>

#include "structmia/image.h"

namespace structmia {

// Maps images into the space the diffusion runs in and back. A latent
// autoencoder would implement this; the toolkit diffuses in pixel space.
class Codec {
 public:
  virtual ~Codec() = default;
  virtual Raster Encode(const Image& image) const = 0;
  // Must return a valid Image (decoders bound their output range).
  virtual Image Decode(const Raster& latent) const = 0;
  virtual std::string name() const = 0;
};

// Encode is a copy; Decode clamps into [0, 1].
class IdentityCodec final : public Codec {
 public:
  Raster Encode(const Image& image) const override { return image.raster(); }
  Image Decode(const Raster& latent) const override {
    return Image::Clamped(latent);
  }
  std::string name() const override { return "identity"; }
};

}  // namespace structmia

#endif  // STRUCTMIA_CODEC_H_
