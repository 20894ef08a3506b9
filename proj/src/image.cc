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

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "structmia/error.h"

namespace structmia {

std::string ToString(const Shape& shape) {
  std::ostringstream os;
  os << shape.height << "x" << shape.width << "x" << shape.channels;
  return os.str();
}

Raster::Raster(Shape shape, double fill)
    : shape_(shape), data_(shape.size(), fill) {
  if (shape.height <= 0 || shape.width <= 0 || shape.channels <= 0) {
    throw ParameterError("raster dimensions must be positive, got " +
                         ToString(shape));
  }
}

Raster::Raster(Shape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  if (shape.height <= 0 || shape.width <= 0 || shape.channels <= 0) {
    throw ParameterError("raster dimensions must be positive, got " +
                         ToString(shape));
  }
  if (data_.size() != shape.size()) {
    throw ParameterError("raster data has " + std::to_string(data_.size()) +
                         " values, shape " + ToString(shape) + " needs " +
                         std::to_string(shape.size()));
  }
}

void CheckImageShape(const Shape& shape) {
  if (shape.channels != 1 && shape.channels != 3) {
    throw ParameterError("image must have 1 or 3 channels, got " +
                         std::to_string(shape.channels));
  }
  if (shape.height < Image::kMinSide || shape.width < Image::kMinSide) {
    throw ParameterError("image sides must be at least " +
                         std::to_string(Image::kMinSide) + ", got " +
                         ToString(shape));
  }
}

Image Image::FromRaster(Raster raster) {
  CheckImageShape(raster.shape());
  const auto data = raster.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = data[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream os;
      os << "image value " << v << " at flat index " << i
         << " is outside [0, 1]";
      throw ParameterError(os.str());
    }
  }
  return Image(std::move(raster));
}

Image Image::Clamped(const Raster& raster) {
  CheckImageShape(raster.shape());
  Raster out = raster;
  for (double& v : out.data()) {
    v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  }
  return Image(std::move(out));
}

unsigned char QuantizeToByte(double value) {
  const double scaled = std::floor(value * 255.0 + 0.5);
  return static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
}

namespace {

std::string Lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

Image FromBytes(Shape shape, const std::vector<unsigned char>& bytes) {
  std::vector<double> values(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) values[i] = bytes[i] / 255.0;
  return Image::FromRaster(Raster(shape, std::move(values)));
}

// Reads the next whitespace-delimited header token, skipping # comments.
std::string PgmToken(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

Image LoadPgm(const std::filesystem::path& path, std::ifstream& in) {
  const auto fail = [&](const std::string& why) {
    return FormatError(path.string() + ": " + why);
  };
  if (PgmToken(in) != "P5") throw fail("not a binary PGM (P5) file");
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(PgmToken(in));
    height = std::stoi(PgmToken(in));
    maxval = std::stoi(PgmToken(in));
  } catch (const std::exception&) {
    throw fail("malformed PGM header");
  }
  if (maxval != 255) {
    throw fail("unsupported PGM bit depth (maxval " + std::to_string(maxval) +
               ", only 255 is supported)");
  }
  if (width <= 0 || height <= 0) throw fail("non-positive PGM dimensions");
  const Shape shape{height, width, 1};
  std::vector<unsigned char> bytes(shape.size());
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw fail("truncated PGM pixel data");
  }
  try {
    return FromBytes(shape, bytes);
  } catch (const ParameterError& e) {
    throw fail(e.what());
  }
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

Image LoadPng(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> file(
      std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError(path.string() + ": cannot open for reading");

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path.string() + ": libpng initialization failed");
  }
  // Everything that may longjmp lives between here and the destroy call;
  // no objects with destructors are created in that span.
  std::string problem;
  Shape shape;
  std::vector<unsigned char> bytes;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path.string() + ": corrupt PNG data");
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  if (bit_depth != 8) {
    problem = "unsupported PNG bit depth " + std::to_string(bit_depth) +
              " (only 8-bit is supported)";
  } else if (color_type != PNG_COLOR_TYPE_GRAY &&
             color_type != PNG_COLOR_TYPE_RGB) {
    problem = "unsupported PNG color type (only grayscale and RGB)";
  } else {
    shape = Shape{static_cast<int>(height), static_cast<int>(width),
                  color_type == PNG_COLOR_TYPE_RGB ? 3 : 1};
    bytes.resize(shape.size());
    rows.resize(height);
    const std::size_t stride = static_cast<std::size_t>(width) * shape.channels;
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = &bytes[y * stride];
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!problem.empty()) throw FormatError(path.string() + ": " + problem);
  try {
    return FromBytes(shape, bytes);
  } catch (const ParameterError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

Image LoadImage(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  const int first = in.peek();
  if (first == 'P') return LoadPgm(path, in);
  in.close();
  if (first == 0x89) return LoadPng(path);
  throw FormatError(path.string() + ": unrecognized image format");
}

void SaveImage(const Image& image, const std::filesystem::path& path) {
  const Shape& shape = image.shape();
  std::vector<unsigned char> bytes(image.size());
  const auto data = image.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = QuantizeToByte(data[i]);
  }

  if (Lowercase(path.extension().string()) == ".pgm") {
    if (shape.channels != 1) {
      throw ParameterError(path.string() +
                           ": PGM output requires a grayscale image");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "P5\n" << shape.width << " " << shape.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(path.string() + ": write failed");
    return;
  }

  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(shape.width);
  png.height = static_cast<png_uint_32>(shape.height);
  png.format = shape.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), /*convert_to_8bit=*/0,
                               bytes.data(), /*row_stride=*/0,
                               /*colormap=*/nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError(path.string() + ": " + message);
  }
}

}  // namespace structmia
