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

#ifndef STRUCTMIA_DENOISER_H_
#define STRUCTMIA_DENOISER_H_

#include <optional>
#include <string>
#include <vector>

#include "structmia/image.h"
#include "structmia/schedule.h"

namespace structmia {

// Conditioning signal: either none, or a class label standing in for a text
// prompt.
class Condition {
 public:
  static Condition Unconditional() { return Condition(); }
  static Condition Class(int label);

  bool is_class() const { return label_.has_value(); }
  // Requires is_class().
  int label() const { return *label_; }

  std::string ToString() const;
  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  Condition() = default;
  std::optional<int> label_;
};

// Noise-prediction contract eps(x_t, t, cond). Implementations are pure:
// identical arguments give bit-identical output, and Predict may be called
// concurrently from several threads.
class EpsilonModel {
 public:
  virtual ~EpsilonModel() = default;

  // Returns a raster with the shape of x_t.
  virtual Raster Predict(const Raster& x_t, int t,
                         const Condition& cond) const = 0;

  // False when Predict rejects t == 0; see PredictAtStep.
  virtual bool DefinedAtZero() const = 0;

  // Number of class labels accepted by Condition::Class, 0 when the model is
  // unconditional only.
  virtual int num_classes() const = 0;

  virtual std::string Describe() const = 0;
};

// Predict at step t, evaluating at t = 1 instead when t == 0 and the model is
// undefined there (the memorizing oracle is singular at zero noise).
Raster PredictAtStep(const EpsilonModel& model, const Raster& x_t, int t,
                     const Condition& cond);

// Classifier-free guidance: eps_u + gamma * (eps_c - eps_u) with
// eps_u = Predict(x_t, t, unconditional) and eps_c = Predict(x_t, t, cond).
// cond must be a class condition. gamma == 0 and gamma == 1 return the
// unconditional and conditional predictions bit-exactly (and evaluate only
// that branch). Uses PredictAtStep.
Raster GuidedPredict(const EpsilonModel& model, const Raster& x_t, int t,
                     const Condition& cond, double gamma);

// The predictor every diffusion step uses: plain PredictAtStep for
// unconditional queries, GuidedPredict for class conditions.
Raster PredictNoise(const EpsilonModel& model, const Raster& x_t, int t,
                    const Condition& cond, double gamma);

// Bayes-optimal noise predictor for a model that has memorized its training
// set: the data distribution is the empirical distribution over the training
// images, so
//
//   E[x0 | x_t] = sum_i w_i x_i,
//   w_i = softmax_i( -|x_t - sqrt(abar_t) x_i|^2 / (2 (1 - abar_t)) ),
//   eps = (x_t - sqrt(abar_t) E[x0 | x_t]) / sqrt(1 - abar_t).
//
// Under Condition::Class(c) the sum runs over training images of class c only.
class OracleDenoiser final : public EpsilonModel {
 public:
  // labels may be empty for an unconditional-only oracle; otherwise it must
  // match train in length with values in [0, num_classes).
  OracleDenoiser(const std::vector<Image>& train, std::vector<int> labels,
                 int num_classes, Schedule schedule);

  // Throws DomainError at t == 0 and ParameterError for an empty class or a
  // shape mismatch.
  Raster Predict(const Raster& x_t, int t,
                 const Condition& cond) const override;
  bool DefinedAtZero() const override { return false; }
  int num_classes() const override { return num_classes_; }
  std::string Describe() const override;

  // Posterior weights over the training images admitted by cond, in training
  // order. Non-negative and summing to 1.
  std::vector<double> PosteriorWeights(const Raster& x_t, int t,
                                       const Condition& cond) const;
  Raster PosteriorMean(const Raster& x_t, int t, const Condition& cond) const;

  std::size_t train_size() const { return rows_; }
  const Schedule& schedule() const { return schedule_; }

  // Exponents below this (after max-subtraction) are clipped before exp.
  static constexpr double kMinExponent = -700.0;

 private:
  const std::vector<int>& Admitted(const Condition& cond) const;
  void CheckQuery(const Raster& x_t, int t) const;

  Shape shape_;
  std::size_t rows_ = 0;
  std::vector<double> train_;  // rows_ x shape_.size(), row-major
  std::vector<int> labels_;
  int num_classes_ = 0;
  std::vector<int> all_rows_;
  std::vector<std::vector<int>> rows_by_class_;
  Schedule schedule_;
};

// Returns the same raster for every query: a constant value, or a fixed
// raster (which must match the query shape). A value of zero gives the null
// model.
class ConstantDenoiser final : public EpsilonModel {
 public:
  explicit ConstantDenoiser(double value, int num_classes = 0)
      : value_(value), num_classes_(num_classes) {}
  ConstantDenoiser(Raster output, int num_classes = 0)
      : value_(0.0), output_(std::move(output)), num_classes_(num_classes) {}

  Raster Predict(const Raster& x_t, int t,
                 const Condition& cond) const override;
  bool DefinedAtZero() const override { return true; }
  int num_classes() const override { return num_classes_; }
  std::string Describe() const override;

 private:
  double value_;
  std::optional<Raster> output_;
  int num_classes_;
};

}  // namespace structmia

#endif  // STRUCTMIA_DENOISER_H_
