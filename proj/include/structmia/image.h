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

#ifndef STRUCTMIA_IMAGE_H_
#define STRUCTMIA_IMAGE_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace structmia {

struct Shape {
  int height = 0;
  int width = 0;
  int channels = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * width * channels;
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string ToString(const Shape& shape);

// A dense H x W x C raster of doubles, row-major with interleaved channels.
// Values are unconstrained: noisy diffusion states live here.
class Raster {
 public:
  Raster() = default;
  explicit Raster(Shape shape, double fill = 0.0);
  Raster(Shape shape, std::vector<double> data);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double& at(int y, int x, int c) { return data_[Index(y, x, c)]; }
  double at(int y, int x, int c) const { return data_[Index(y, x, c)]; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t Index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * shape_.width + x) * shape_.channels +
           c;
  }

  Shape shape_;
  std::vector<double> data_;
};

// A raster that satisfies the image invariants: 1 or 3 channels, both sides
// at least kMinSide pixels (the SSIM window must fit), every value finite and
// in [0, 1]. Immutable once constructed.
class Image {
 public:
  static constexpr int kMinSide = 16;

  // Validates and wraps. Throws ParameterError naming the first violation.
  static Image FromRaster(Raster raster);

  // Clamps every value into [0, 1] (NaN maps to 0) and wraps. The shape must
  // still be a valid image shape.
  static Image Clamped(const Raster& raster);

  const Raster& raster() const { return raster_; }
  const Shape& shape() const { return raster_.shape(); }
  std::size_t size() const { return raster_.size(); }
  std::span<const double> data() const { return raster_.data(); }
  double at(int y, int x, int c) const { return raster_.at(y, x, c); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  explicit Image(Raster raster) : raster_(std::move(raster)) {}

  Raster raster_;
};

// Throws ParameterError unless the shape is a valid image shape.
void CheckImageShape(const Shape& shape);

// Reads an 8-bit binary PGM (P5) or an 8-bit grayscale/RGB PNG. Bytes map to
// values by v / 255. Throws IoError if the file cannot be opened and
// FormatError (naming the path) for anything it cannot decode.
Image LoadImage(const std::filesystem::path& path);

// Writes an 8-bit file: PGM when the extension is .pgm (grayscale only), PNG
// otherwise. Bytes are round(v * 255) with halves rounded up.
void SaveImage(const Image& image, const std::filesystem::path& path);

// The byte SaveImage writes for a value in [0, 1].
unsigned char QuantizeToByte(double value);

}  // namespace structmia

#endif  // STRUCTMIA_IMAGE_H_
