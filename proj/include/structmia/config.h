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

#ifndef STRUCTMIA_CONFIG_H_
#define STRUCTMIA_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "structmia/attacks.h"
#include "structmia/conv_denoiser.h"
#include "structmia/dataset.h"
#include "structmia/distortions.h"

namespace structmia {

enum class Backend { kOracle, kTrained };

// Everything an experiment command needs. Defaults are the `paper-default`
// preset. A single master seed keys every random stream (dataset content,
// naive-loss noise, distortions, training); the streams stay independent
// because each purpose has its own stream tag.
struct ExperimentConfig {
  std::string preset = "paper-default";
  std::uint64_t seed = 20240601;
  int workers = 1;
  std::filesystem::path out = "results";

  // Dataset: generated in memory unless dataset_dir names a directory with
  // a manifest.csv.
  ShapesSpec shapes;  // shapes.seed is ignored in favour of `seed`
  std::filesystem::path dataset_dir;

  int t_max = 1000;
  double beta_start = 1e-4;
  double beta_end = 0.02;

  Backend backend = Backend::kOracle;
  // Trained backend model file; empty means <out>/model.bin.
  std::filesystem::path model_path;
  ConvNetArch arch;  // sides and channels follow the dataset
  TrainConfig train;

  std::vector<AttackKind> attacks = {AttackKind::kStructural,
                                     AttackKind::kSecmi, AttackKind::kPia,
                                     AttackKind::kNaiveLoss};
  AttackConfig attack;
  bool class_conditional = true;

  std::vector<DistortionKind> distortions = {
      DistortionKind::kSaltPepper, DistortionKind::kRotation,
      DistortionKind::kSaturation, DistortionKind::kBrightness};
  double salt_pepper_fraction = 0.10;
  double rotation_degrees = 10.0;
  double saturation_delta = 0.5;
  double brightness_delta = 0.5;
  bool dump_distorted = false;

  int curve_t_last = 800;
  int curve_step = 50;
  int curve_dt = 50;

  std::vector<int> timestep_grid = {50, 100, 200, 300, 400, 600, 800};
  std::vector<int> interval_grid = {1, 10, 20, 50, 100};
  int interval_ablation_t_total = 100;
  std::vector<double> guidance_grid = {0, 1, 2, 3, 4, 5};

  // Write every visited trajectory state of the structural attack as PNG
  // plus a CSV of SSIM to the original.
  bool dump_trajectories = false;

  // Derived views.
  ShapesSpec DatasetSpec() const;
  Schedule MakeSchedule() const;
  AttackConfig Attack() const;  // with noise_seed = seed
  TrainConfig Training() const;  // with seed = seed
  DistortionSpec Distortion(DistortionKind kind) const;
  std::filesystem::path ModelPath() const;

  // Cross-field checks; throws ParameterError.
  void Validate() const;
};

// Built-in presets by name; throws ParameterError for unknown names.
ExperimentConfig Preset(const std::string& name);

// Applies an INI file (sections [run], [dataset], [schedule], [model],
// [train], [attack], [distortion], [curves], [ablation], [output]) on top of
// `base`. A `preset` key in [run] first resets to that preset. Unknown
// sections or keys and malformed values raise ParameterError; a missing file
// raises MissingArtifactError.
ExperimentConfig LoadConfig(const std::filesystem::path& path,
                            const ExperimentConfig& base = Preset("paper-default"));

// Sets one "section.key" to a textual value, with the same validation.
void SetConfigValue(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value);

// Canonical (section.key, value) pairs in a fixed order. Floating-point
// values are printed with 17 significant digits.
std::vector<std::pair<std::string, std::string>> Serialize(
    const ExperimentConfig& cfg);

// 16 hex digits of SHA-256 over the serialization, excluding run.workers and
// run.out (they cannot change any result).
std::string ConfigHash(const ExperimentConfig& cfg);

// The serialization as an INI document that LoadConfig reads back.
std::string ToIni(const ExperimentConfig& cfg);

}  // namespace structmia

#endif  // STRUCTMIA_CONFIG_H_
