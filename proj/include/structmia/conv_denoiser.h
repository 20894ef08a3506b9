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

// A small trainable noise predictor: a convolutional encoder-decoder with
// three stride-2 downsampling stages, three nearest-neighbour upsampling
// stages with additive skips, and LeakyReLU(0.1) activations.
//
// Every stage adds a per-channel bias computed from the timestep (a linear
// map of 8 sinusoidal features of t / 1000) and from the class token. Token
// `num_classes` is the null token used for unconditional queries; training
// swaps labels for it with probability label_dropout, which is what makes
// classifier-free guidance meaningful.

#ifndef STRUCTMIA_CONV_DENOISER_H_
#define STRUCTMIA_CONV_DENOISER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "structmia/denoiser.h"
#include "structmia/image.h"
#include "structmia/schedule.h"

namespace structmia {

struct ConvNetArch {
  int height = 32;
  int width = 32;
  int channels = 3;
  int c1 = 32;  // full resolution
  int c2 = 64;  // 1/2 resolution
  int c3 = 64;  // 1/4 and 1/8 resolution
  int num_classes = 0;

  // Throws ParameterError unless sides are positive multiples of 8, channels
  // is 1 or 3, widths are positive and num_classes >= 0.
  void Validate() const;
  friend bool operator==(const ConvNetArch&, const ConvNetArch&) = default;
};

struct TrainConfig {
  int epochs = 200;
  double lr = 0.01;
  double momentum = 0.9;
  int batch = 8;
  // Training timesteps are drawn uniformly from [1, t_max_train].
  int t_max_train = 100;
  double label_dropout = 0.1;
  std::uint64_t seed = 0;

  void Validate(const Schedule& schedule) const;
};

struct EpochReport {
  int epoch;
  double mean_loss;  // per-element squared error averaged over the epoch
};

class ConvDenoiser final : public EpsilonModel {
 public:
  // Fresh parameters: convolution weights and biases uniform in
  // +-1/sqrt(fan_in), time maps uniform in +-1/sqrt(8), class tables zero.
  ConvDenoiser(const ConvNetArch& arch, std::uint64_t init_seed);

  // Accepts every t >= 0, including t = 0.
  Raster Predict(const Raster& x_t, int t,
                 const Condition& cond) const override;
  bool DefinedAtZero() const override { return true; }
  int num_classes() const override { return arch_.num_classes; }
  std::string Describe() const override;

  const ConvNetArch& arch() const { return arch_; }
  std::span<const float> parameters() const { return params_; }

  // Binary format: see docs/model_format.md.
  void Save(const std::filesystem::path& path) const;
  // Throws MissingArtifactError if absent, FormatError if malformed.
  static ConvDenoiser Load(const std::filesystem::path& path);

  // Trains in place with momentum SGD on the noise-regression loss. Runs
  // single-threaded and is deterministic given cfg.seed. on_epoch, if set,
  // is called after every epoch. Throws TrainingError on a non-finite loss.
  std::vector<EpochReport> Train(
      const std::vector<Image>& images, const std::vector<int>& labels,
      const Schedule& schedule, const TrainConfig& cfg,
      const std::function<void(const EpochReport&, const ConvDenoiser&)>&
          on_epoch = {});

  // Exposed for gradient checks: per-element mean squared error of one
  // prediction against `target` and its gradient with respect to every
  // parameter (accumulated into grad, which must have parameter size).
  double LossAndGradient(const Raster& x_t, int t, int token,
                         const Raster& target, std::vector<float>& grad) const;
  std::span<float> mutable_parameters() { return params_; }

  // Token used for unconditional queries.
  int null_token() const { return arch_.num_classes; }

 private:
  struct Layout;
  struct Cache;

  std::vector<float> Forward(const std::vector<float>& input, int t, int token,
                             Cache& cache) const;
  void Backward(const Cache& cache, std::vector<float> grad_out,
                std::vector<float>& grad) const;
  int TokenFor(const Condition& cond) const;

  ConvNetArch arch_;
  std::vector<float> params_;
};

// Number of parameters of an architecture.
std::size_t ParameterCount(const ConvNetArch& arch);

}  // namespace structmia

#endif  // STRUCTMIA_CONV_DENOISER_H_
