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

#include "structmia/denoiser.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "structmia/error.h"
#include "structmia/kernels.h"

namespace structmia {

Condition Condition::Class(int label) {
  if (label < 0) {
    throw ParameterError("class label must be non-negative, got " +
                         std::to_string(label));
  }
  Condition c;
  c.label_ = label;
  return c;
}

std::string Condition::ToString() const {
  return is_class() ? "class(" + std::to_string(*label_) + ")"
                    : "unconditional";
}

Raster PredictAtStep(const EpsilonModel& model, const Raster& x_t, int t,
                     const Condition& cond) {
  if (t == 0 && !model.DefinedAtZero()) t = 1;
  return model.Predict(x_t, t, cond);
}

Raster GuidedPredict(const EpsilonModel& model, const Raster& x_t, int t,
                     const Condition& cond, double gamma) {
  if (!cond.is_class()) {
    throw ParameterError("guided prediction needs a class condition");
  }
  if (gamma == 0.0) {
    return PredictAtStep(model, x_t, t, Condition::Unconditional());
  }
  if (gamma == 1.0) return PredictAtStep(model, x_t, t, cond);
  Raster eps_u = PredictAtStep(model, x_t, t, Condition::Unconditional());
  const Raster eps_c = PredictAtStep(model, x_t, t, cond);
  // eps_u + gamma * (eps_c - eps_u) == (1 - gamma) * eps_u + gamma * eps_c
  auto u = eps_u.data();
  const auto c = eps_c.data();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += gamma * (c[i] - u[i]);
  return eps_u;
}

Raster PredictNoise(const EpsilonModel& model, const Raster& x_t, int t,
                    const Condition& cond, double gamma) {
  if (!cond.is_class()) return PredictAtStep(model, x_t, t, cond);
  return GuidedPredict(model, x_t, t, cond, gamma);
}

OracleDenoiser::OracleDenoiser(const std::vector<Image>& train,
                               std::vector<int> labels, int num_classes,
                               Schedule schedule)
    : labels_(std::move(labels)),
      num_classes_(num_classes),
      schedule_(std::move(schedule)) {
  if (train.empty()) {
    throw ParameterError("oracle denoiser needs a non-empty training set");
  }
  shape_ = train.front().shape();
  rows_ = train.size();
  const std::size_t dim = shape_.size();
  train_.reserve(rows_ * dim);
  for (const Image& img : train) {
    if (img.shape() != shape_) {
      throw ParameterError("training images must share one shape; got " +
                           ToString(img.shape()) + " and " +
                           ToString(shape_));
    }
    train_.insert(train_.end(), img.data().begin(), img.data().end());
  }
  if (!labels_.empty() && labels_.size() != rows_) {
    throw ParameterError("oracle labels and training images differ in count");
  }
  if (num_classes_ < 0) throw ParameterError("num_classes must be >= 0");
  all_rows_.resize(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all_rows_[i] = static_cast<int>(i);
  rows_by_class_.resize(num_classes_);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int label = labels_[i];
    if (label < 0 || label >= num_classes_) {
      throw ParameterError("training label " + std::to_string(label) +
                           " outside [0, " + std::to_string(num_classes_) +
                           ")");
    }
    rows_by_class_[label].push_back(static_cast<int>(i));
  }
}

const std::vector<int>& OracleDenoiser::Admitted(const Condition& cond) const {
  if (!cond.is_class()) return all_rows_;
  if (labels_.empty() || cond.label() >= num_classes_) {
    throw ParameterError("oracle cannot condition on " + cond.ToString() +
                         " (it knows " + std::to_string(num_classes_) +
                         " classes)");
  }
  const std::vector<int>& rows = rows_by_class_[cond.label()];
  if (rows.empty()) {
    throw ParameterError("oracle has no training images of " +
                         cond.ToString());
  }
  return rows;
}

void OracleDenoiser::CheckQuery(const Raster& x_t, int t) const {
  if (t == 0) throw DomainError("oracle undefined at zero noise (t = 0)");
  if (t < 0 || t > schedule_.t_max()) {
    throw ParameterError("oracle timestep " + std::to_string(t) +
                         " outside [1, " + std::to_string(schedule_.t_max()) +
                         "]");
  }
  if (x_t.shape() != shape_) {
    throw ParameterError("oracle query shape " + ToString(x_t.shape()) +
                         " differs from training shape " + ToString(shape_));
  }
}

std::vector<double> OracleDenoiser::PosteriorWeights(
    const Raster& x_t, int t, const Condition& cond) const {
  CheckQuery(x_t, t);
  const std::vector<int>& rows = Admitted(cond);
  const auto& k = kernels::Active();
  const std::size_t dim = shape_.size();
  const double scale = schedule_.sqrt_alpha_bar(t);
  const double noise_var =
      schedule_.sqrt_one_minus_alpha_bar(t) *
      schedule_.sqrt_one_minus_alpha_bar(t);

  std::vector<double> logits(rows.size());
  double max_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double* xi = &train_[static_cast<std::size_t>(rows[r]) * dim];
    const double d2 = k.scaled_sq_distance(x_t.data().data(), xi, scale, dim);
    logits[r] = -d2 / (2.0 * noise_var);
    max_logit = std::max(max_logit, logits[r]);
  }
  double total = 0.0;
  for (double& l : logits) {
    l = std::exp(std::max(l - max_logit, kMinExponent));
    total += l;
  }
  for (double& l : logits) l /= total;
  return logits;
}

Raster OracleDenoiser::PosteriorMean(const Raster& x_t, int t,
                                     const Condition& cond) const {
  const std::vector<double> weights = PosteriorWeights(x_t, t, cond);
  const std::vector<int>& rows = Admitted(cond);
  const auto& k = kernels::Active();
  const std::size_t dim = shape_.size();
  Raster mean(shape_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    k.axpy(weights[r], &train_[static_cast<std::size_t>(rows[r]) * dim],
           mean.data().data(), dim);
  }
  return mean;
}

Raster OracleDenoiser::Predict(const Raster& x_t, int t,
                               const Condition& cond) const {
  Raster mean = PosteriorMean(x_t, t, cond);
  const double inv_sigma = 1.0 / schedule_.sqrt_one_minus_alpha_bar(t);
  const double scale = schedule_.sqrt_alpha_bar(t);
  // eps = (x_t - sqrt(abar) * mean) / sqrt(1 - abar), written into mean.
  kernels::Active().axpby(inv_sigma, x_t.data().data(), -scale * inv_sigma,
                          mean.data().data(), mean.data().data(), mean.size());
  return mean;
}

std::string OracleDenoiser::Describe() const {
  return "oracle(train=" + std::to_string(rows_) +
         ",classes=" + std::to_string(num_classes_) + ")";
}

Raster ConstantDenoiser::Predict(const Raster& x_t, int /*t*/,
                                 const Condition& cond) const {
  if (cond.is_class() && cond.label() >= num_classes_) {
    throw ParameterError("constant model cannot condition on " +
                         cond.ToString());
  }
  if (output_) {
    if (output_->shape() != x_t.shape()) {
      throw ParameterError("constant model output shape " +
                           ToString(output_->shape()) + " differs from query " +
                           ToString(x_t.shape()));
    }
    return *output_;
  }
  return Raster(x_t.shape(), value_);
}

std::string ConstantDenoiser::Describe() const {
  return output_ ? "constant(raster)" : "constant(" + std::to_string(value_) + ")";
}

}  // namespace structmia
