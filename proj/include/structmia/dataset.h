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

#ifndef STRUCTMIA_DATASET_H_
#define STRUCTMIA_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "structmia/image.h"

namespace structmia {

enum class Split { kMember, kHoldout };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct Sample {
  int id;
  Image image;
  int label;
};

struct Dataset {
  std::vector<Sample> members;
  std::vector<Sample> holdout;
  std::uint64_t seed = 0;
  int num_classes = 0;

  // Member images in id order; the memorizing oracle's training set.
  std::vector<Image> MemberImages() const;
  std::vector<int> MemberLabels() const;
};

struct ShapesSpec {
  int n_member = 128;
  int n_holdout = 128;
  int size = 32;
  int k_classes = 3;
  std::uint64_t seed = 20240601;
  // Images draw their scene layout from a shared pool of this many templates
  // and then jitter it, so holdout images have structurally close members.
  // Zero gives every image its own independent layout.
  int n_templates = 32;
  // Scale of the per-image jitter (colors, shape placement, pixel grain).
  double jitter = 1.0;
};

// Checks ShapesSpec preconditions; throws ParameterError.
void Validate(const ShapesSpec& spec);

// Renders image `id`. Members take ids [0, n_member) and holdout images
// [n_member, n_member + n_holdout). The result depends only on (spec, id).
Sample GenerateShapesSample(const ShapesSpec& spec, int id);

Dataset GenerateShapesDataset(const ShapesSpec& spec);

// Writes <dir>/images/<id>.png for every sample and <dir>/manifest.csv with
// header id,split,class,path (paths relative to dir). Creates dir.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& dir);

// Reads a manifest written by WriteDataset (or by hand). Image paths are
// resolved relative to the manifest's directory. Throws
// MissingArtifactError if the manifest does not exist.
Dataset ReadDataset(const std::filesystem::path& manifest);

// SHA-256 over ids, splits, labels and pixel values.
std::string DatasetFingerprint(const Dataset& dataset);

}  // namespace structmia

#endif  // STRUCTMIA_DATASET_H_
