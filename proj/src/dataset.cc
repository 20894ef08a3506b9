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

#include "structmia/dataset.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "structmia/digest.h"
#include "structmia/error.h"
#include "structmia/rng.h"

namespace structmia {

std::string_view SplitName(Split split) {
  return split == Split::kMember ? "member" : "holdout";
}

Split ParseSplit(std::string_view name) {
  if (name == "member") return Split::kMember;
  if (name == "holdout") return Split::kHoldout;
  throw ParameterError("unknown split '" + std::string(name) + "'");
}

std::vector<Image> Dataset::MemberImages() const {
  std::vector<Image> out;
  out.reserve(members.size());
  for (const Sample& s : members) out.push_back(s.image);
  return out;
}

std::vector<int> Dataset::MemberLabels() const {
  std::vector<int> out;
  out.reserve(members.size());
  for (const Sample& s : members) out.push_back(s.label);
  return out;
}

void Validate(const ShapesSpec& spec) {
  if (spec.n_member < 2 || spec.n_holdout < 2) {
    throw ParameterError("dataset needs at least 2 member and 2 holdout images");
  }
  if (spec.size < Image::kMinSide) {
    throw ParameterError("dataset image size must be at least " +
                         std::to_string(Image::kMinSide) + ", got " +
                         std::to_string(spec.size));
  }
  if (spec.k_classes < 1) throw ParameterError("k_classes must be >= 1");
  if (spec.n_templates < 0) throw ParameterError("n_templates must be >= 0");
  if (!(spec.jitter >= 0.0)) throw ParameterError("jitter must be >= 0");
}

namespace {

enum class Family { kRectangle = 0, kCircle = 1, kStripes = 2 };
constexpr int kNumFamilies = 3;

struct ShapeParams {
  Family family;
  std::array<double, 3> color;
  double cx, cy;  // center, in units of the image side
  double radius;
  double aspect;  // rectangle height / width
  double period;  // stripe period
};

struct Scene {
  int label;
  std::array<double, 3> base;
  std::array<double, 3> grad_x, grad_y;
  double freq_x, freq_y, phase;
  std::vector<ShapeParams> shapes;
};

Scene DrawScene(Stream& rng, int label) {
  Scene scene;
  scene.label = label;
  for (double& b : scene.base) b = rng.Uniform(0.2, 0.8);
  for (double& g : scene.grad_x) g = rng.Uniform(-0.3, 0.3);
  for (double& g : scene.grad_y) g = rng.Uniform(-0.3, 0.3);
  scene.freq_x = rng.Uniform(2.0, 6.0);
  scene.freq_y = rng.Uniform(2.0, 6.0);
  scene.phase = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const int count = 2 + static_cast<int>(rng.Below(4));
  const auto dominant = static_cast<Family>(label % kNumFamilies);
  for (int s = 0; s < count; ++s) {
    ShapeParams p;
    // All but the last shape belong to the class's family.
    p.family = s + 1 < count ? dominant
                             : static_cast<Family>(rng.Below(kNumFamilies));
    for (double& c : p.color) c = rng.Uniform();
    p.cx = rng.Uniform(0.1, 0.9);
    p.cy = rng.Uniform(0.1, 0.9);
    p.radius = rng.Uniform(0.1, 0.3);
    p.aspect = rng.Uniform(0.5, 1.5);
    p.period = rng.Uniform(0.1, 0.25);
    scene.shapes.push_back(p);
  }
  return scene;
}

void Jitter(Scene& scene, Stream& rng, double amount) {
  if (amount == 0.0) return;
  for (double& b : scene.base) b += 0.03 * amount * rng.Normal();
  for (ShapeParams& p : scene.shapes) {
    for (double& c : p.color) {
      c = std::clamp(c + 0.05 * amount * rng.Normal(), 0.0, 1.0);
    }
    p.cx += 0.04 * amount * rng.Normal();
    p.cy += 0.04 * amount * rng.Normal();
    p.radius *= std::max(0.2, 1.0 + 0.1 * amount * rng.Normal());
  }
}

bool Covers(const ShapeParams& p, double u, double v) {
  const double dx = u - p.cx;
  const double dy = v - p.cy;
  switch (p.family) {
    case Family::kRectangle:
      return std::fabs(dx) < p.radius && std::fabs(dy) < p.radius * p.aspect;
    case Family::kCircle:
      return dx * dx + dy * dy < p.radius * p.radius;
    case Family::kStripes: {
      if (std::fabs(dx) >= p.radius || std::fabs(dy) >= p.radius) return false;
      const double phase = (u + v) / p.period;
      return phase - std::floor(phase) < 0.5;
    }
  }
  return false;
}

Image Render(const Scene& scene, int size, Stream& grain, double amount) {
  const Shape shape{size, size, 3};
  Raster r(shape);
  for (int y = 0; y < size; ++y) {
    const double v = static_cast<double>(y) / size;
    for (int x = 0; x < size; ++x) {
      const double u = static_cast<double>(x) / size;
      const double texture =
          0.04 * std::sin(2.0 * std::numbers::pi *
                              (u * scene.freq_x + v * scene.freq_y) +
                          scene.phase);
      std::array<double, 3> px;
      for (int c = 0; c < 3; ++c) {
        px[c] = scene.base[c] + u * scene.grad_x[c] + v * scene.grad_y[c] +
                texture;
      }
      for (const ShapeParams& p : scene.shapes) {
        if (Covers(p, u, v)) px = p.color;
      }
      for (int c = 0; c < 3; ++c) r.at(y, x, c) = px[c];
    }
  }
  if (amount > 0.0) {
    for (double& value : r.data()) value += 0.02 * amount * grain.Normal();
  }
  // Stored at 8-bit precision so a dataset written to disk and read back is
  // identical to the in-memory one.
  for (double& value : r.data()) {
    value = QuantizeToByte(std::clamp(value, 0.0, 1.0)) / 255.0;
  }
  return Image::FromRaster(std::move(r));
}

}  // namespace

Sample GenerateShapesSample(const ShapesSpec& spec, int id) {
  Validate(spec);
  const int total = spec.n_member + spec.n_holdout;
  if (id < 0 || id >= total) {
    throw ParameterError("image id " + std::to_string(id) + " outside [0, " +
                         std::to_string(total) + ")");
  }
  Stream own(spec.seed, static_cast<std::uint64_t>(id),
             StreamTag::kImageContent);
  Scene scene;
  if (spec.n_templates == 0) {
    const int label = static_cast<int>(own.Below(spec.k_classes));
    scene = DrawScene(own, label);
  } else {
    const auto templ = static_cast<int>(own.Below(spec.n_templates));
    Stream layout(spec.seed, static_cast<std::uint64_t>(templ),
                  StreamTag::kSceneTemplate);
    scene = DrawScene(layout, templ % spec.k_classes);
    Jitter(scene, own, spec.jitter);
  }
  return Sample{id, Render(scene, spec.size, own, spec.jitter), scene.label};
}

Dataset GenerateShapesDataset(const ShapesSpec& spec) {
  Validate(spec);
  Dataset d;
  d.seed = spec.seed;
  d.num_classes = spec.k_classes;
  d.members.reserve(spec.n_member);
  d.holdout.reserve(spec.n_holdout);
  for (int id = 0; id < spec.n_member; ++id) {
    d.members.push_back(GenerateShapesSample(spec, id));
  }
  for (int id = spec.n_member; id < spec.n_member + spec.n_holdout; ++id) {
    d.holdout.push_back(GenerateShapesSample(spec, id));
  }
  return d;
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "images", ec);
  if (ec) throw IoError(dir.string() + ": cannot create directory");
  std::ofstream manifest(dir / "manifest.csv");
  if (!manifest) throw IoError((dir / "manifest.csv").string() + ": cannot open");
  manifest << "id,split,class,path\n";
  const auto emit = [&](const Sample& s, Split split) {
    const std::string rel = "images/" + std::to_string(s.id) + ".png";
    SaveImage(s.image, dir / rel);
    manifest << s.id << ',' << SplitName(split) << ',' << s.label << ',' << rel
             << '\n';
  };
  for (const Sample& s : dataset.members) emit(s, Split::kMember);
  for (const Sample& s : dataset.holdout) emit(s, Split::kHoldout);
  if (!manifest) throw IoError((dir / "manifest.csv").string() + ": write failed");
}

namespace {

int ParseInt(std::string_view field, const std::string& where) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(where + ": expected an integer, got '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

Dataset ReadDataset(const std::filesystem::path& manifest) {
  if (!std::filesystem::exists(manifest)) {
    throw MissingArtifactError(manifest.string() + ": manifest not found");
  }
  std::ifstream in(manifest);
  if (!in) throw IoError(manifest.string() + ": cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != "id,split,class,path") {
    throw FormatError(manifest.string() +
                      ": expected header 'id,split,class,path'");
  }
  Dataset d;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = manifest.string() + ":" + std::to_string(line_no);
    std::array<std::string, 4> fields;
    std::istringstream row(line);
    for (int f = 0; f < 4; ++f) {
      if (!std::getline(row, fields[f], f < 3 ? ',' : '\n')) {
        throw FormatError(where + ": expected 4 fields");
      }
    }
    const int id = ParseInt(fields[0], where);
    const int label = ParseInt(fields[2], where);
    if (label < 0) throw FormatError(where + ": negative class label");
    Sample s{id, LoadImage(manifest.parent_path() / fields[3]), label};
    d.num_classes = std::max(d.num_classes, label + 1);
    (ParseSplit(fields[1]) == Split::kMember ? d.members : d.holdout)
        .push_back(std::move(s));
  }
  const auto by_id = [](const Sample& a, const Sample& b) {
    return a.id < b.id;
  };
  std::sort(d.members.begin(), d.members.end(), by_id);
  std::sort(d.holdout.begin(), d.holdout.end(), by_id);
  std::vector<int> ids;
  for (const Sample& s : d.members) ids.push_back(s.id);
  for (const Sample& s : d.holdout) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw FormatError(manifest.string() + ": duplicate image id");
  }
  if (d.members.empty() || d.holdout.empty()) {
    throw FormatError(manifest.string() +
                      ": needs at least one member and one holdout image");
  }
  return d;
}

std::string DatasetFingerprint(const Dataset& dataset) {
  Sha256 h;
  const auto add = [&](const Sample& s, Split split) {
    h.UpdateU64(static_cast<std::uint64_t>(s.id));
    h.UpdateU64(split == Split::kMember ? 0 : 1);
    h.UpdateU64(static_cast<std::uint64_t>(s.label));
    const Shape& shape = s.image.shape();
    h.UpdateU64(static_cast<std::uint64_t>(shape.height));
    h.UpdateU64(static_cast<std::uint64_t>(shape.width));
    h.UpdateU64(static_cast<std::uint64_t>(shape.channels));
    const auto data = s.image.data();
    h.Update(std::span(reinterpret_cast<const unsigned char*>(data.data()),
                       data.size_bytes()));
  };
  for (const Sample& s : dataset.members) add(s, Split::kMember);
  for (const Sample& s : dataset.holdout) add(s, Split::kHoldout);
  return h.HexDigest().substr(0, 16);
}

}  // namespace structmia
