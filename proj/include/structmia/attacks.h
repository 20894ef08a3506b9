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

// Membership scorers. Every score is oriented so that higher means more
// member-like, and distance-based scores are normalized per element.

#ifndef STRUCTMIA_ATTACKS_H_
#define STRUCTMIA_ATTACKS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "structmia/codec.h"
#include "structmia/dataset.h"
#include "structmia/diffusion.h"
#include "structmia/image.h"

namespace structmia {

enum class AttackKind {
  kStructural,
  kSecmi,
  kPia,
  kNaiveLoss,
  // Structural score measured after inverting and then sampling back to
  // t = 0, instead of at the forward endpoint.
  kReconstruction,
};

std::string_view AttackName(AttackKind kind);
// Throws ParameterError for unknown names.
AttackKind ParseAttack(std::string_view name);

struct AttackConfig {
  int t_total = 100;
  int interval = 50;
  double gamma = 1.0;
  std::optional<double> tau;  // unset: thresholds come from the ROC sweep
  // Evaluation step of the three baselines (SecMI reuses `interval`).
  int t_eval = 100;
  // Independent noise draws averaged by the naive loss.
  int naive_draws = 1;
  std::uint64_t noise_seed = 0;

  // Throws ParameterError unless the step grid fits the schedule, interval
  // divides both t_total and t_eval, and naive_draws >= 1.
  void Validate(const Schedule& schedule) const;
};

// The attacked model together with how queries are conditioned: on the
// sample's own class label (standing in for its caption) or unconditionally.
struct TargetModel {
  const EpsilonModel& model;
  const Schedule& schedule;
  bool class_conditional = true;
  double gamma = 1.0;

  // Class conditioning applies only when the model knows classes.
  DdimContext ContextFor(const Sample& sample) const;
};

struct AttackRecord {
  int id;
  Split split;
  AttackKind attack;
  double score;
};

// ssim(x0, decode(ddim_invert(encode(x0), t_total, interval).endpoint)).
double StructuralScore(const Image& x0, const DdimContext& ctx,
                       const AttackConfig& cfg,
                       const Codec& codec = IdentityCodec());

// ssim(x0, reconstruct(x0, t_total, interval)).
double ReconstructionScore(const Image& x0, const DdimContext& ctx,
                           const AttackConfig& cfg,
                           const Codec& codec = IdentityCodec());

// -|eps - eps_hat(q_sample(x0, t_eval, eps), t_eval)|^2 / numel, averaged
// over `draws` noise samples taken from the (seed, id) stream.
double NaiveLossScore(const Image& x0, std::uint64_t id,
                      const DdimContext& ctx, int t_eval, std::uint64_t seed,
                      int draws = 1);

// eps0 = eps_hat(x0, 0); x_t = sqrt(abar) x0 + sqrt(1 - abar) eps0;
// score = -|eps0 - eps_hat(x_t, t_eval)|_1 / numel.
double PiaScore(const Image& x0, const DdimContext& ctx, int t_eval);

// x_t = ddim_invert(x0, t_eval, interval).endpoint; one sampling step back
// to t_eval - interval and one inversion step forward again;
// score = -|x_t' - x_t|^2 / numel.
double SecmiScore(const Image& x0, const DdimContext& ctx, int t_eval,
                  int interval);

// Runs the scorer for `kind` on one sample.
double ScoreImage(AttackKind kind, const Image& x0, std::uint64_t id,
                  const DdimContext& ctx, const AttackConfig& cfg);

// Member iff score > tau.
inline bool Classify(double score, double tau) { return score > tau; }

}  // namespace structmia

#endif  // STRUCTMIA_ATTACKS_H_
