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

#include "structmia/attacks.h"

#include <cmath>

#include "structmia/error.h"
#include "structmia/kernels.h"
#include "structmia/rng.h"
#include "structmia/ssim.h"

namespace structmia {
namespace {

void CheckEvalStep(int t_eval, const Schedule& schedule) {
  if (t_eval < 1 || t_eval > schedule.t_max()) {
    throw ParameterError("evaluation step " + std::to_string(t_eval) +
                         " outside [1, " + std::to_string(schedule.t_max()) +
                         "]");
  }
}

double CheckFinite(double score, AttackKind kind) {
  if (!std::isfinite(score)) {
    throw NumericError(std::string(AttackName(kind)) +
                       " produced a non-finite score");
  }
  return score;
}

}  // namespace

std::string_view AttackName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kStructural: return "structural";
    case AttackKind::kSecmi: return "secmi";
    case AttackKind::kPia: return "pia";
    case AttackKind::kNaiveLoss: return "naive_loss";
    case AttackKind::kReconstruction: return "reconstruction";
  }
  return "unknown";
}

AttackKind ParseAttack(std::string_view name) {
  for (AttackKind k : {AttackKind::kStructural, AttackKind::kSecmi,
                       AttackKind::kPia, AttackKind::kNaiveLoss,
                       AttackKind::kReconstruction}) {
    if (AttackName(k) == name) return k;
  }
  throw ParameterError("unknown attack '" + std::string(name) + "'");
}

void AttackConfig::Validate(const Schedule& schedule) const {
  CheckStepGrid(t_total, interval, schedule);
  CheckEvalStep(t_eval, schedule);
  if (t_eval % interval != 0) {
    throw ParameterError("interval " + std::to_string(interval) +
                         " does not divide t_eval " + std::to_string(t_eval));
  }
  if (naive_draws < 1) throw ParameterError("naive_draws must be >= 1");
  if (!std::isfinite(gamma)) throw ParameterError("gamma must be finite");
}

DdimContext TargetModel::ContextFor(const Sample& sample) const {
  const bool use_class = class_conditional && model.num_classes() > 0;
  return DdimContext{model, schedule,
                     use_class ? Condition::Class(sample.label)
                               : Condition::Unconditional(),
                     gamma};
}

double StructuralScore(const Image& x0, const DdimContext& ctx,
                       const AttackConfig& cfg, const Codec& codec) {
  const Trajectory traj =
      DdimInvert(codec.Encode(x0), cfg.t_total, cfg.interval, ctx);
  return CheckFinite(Ssim(x0, codec.Decode(traj.endpoint())),
                     AttackKind::kStructural);
}

double ReconstructionScore(const Image& x0, const DdimContext& ctx,
                           const AttackConfig& cfg, const Codec& codec) {
  const Trajectory forward =
      DdimInvert(codec.Encode(x0), cfg.t_total, cfg.interval, ctx);
  const Trajectory backward =
      DdimSample(forward.endpoint(), cfg.t_total, cfg.interval, ctx);
  return CheckFinite(Ssim(x0, codec.Decode(backward.endpoint())),
                     AttackKind::kReconstruction);
}

double NaiveLossScore(const Image& x0, std::uint64_t id,
                      const DdimContext& ctx, int t_eval, std::uint64_t seed,
                      int draws) {
  CheckEvalStep(t_eval, ctx.schedule);
  if (draws < 1) throw ParameterError("naive loss needs at least one draw");
  const auto& k = kernels::Active();
  Stream rng(seed, id, StreamTag::kNaiveLossNoise);
  double total = 0.0;
  Raster eps(x0.shape());
  for (int d = 0; d < draws; ++d) {
    for (double& v : eps.data()) v = rng.Normal();
    const Raster x_t = QSample(x0.raster(), t_eval, eps, ctx.schedule);
    const Raster pred = PredictNoise(ctx.model, x_t, t_eval, ctx.cond, ctx.gamma);
    total += k.scaled_sq_distance(eps.data().data(), pred.data().data(), 1.0,
                                  eps.size());
  }
  return CheckFinite(-total / (static_cast<double>(draws) * x0.size()),
                     AttackKind::kNaiveLoss);
}

double PiaScore(const Image& x0, const DdimContext& ctx, int t_eval) {
  CheckEvalStep(t_eval, ctx.schedule);
  const Raster eps0 = PredictNoise(ctx.model, x0.raster(), 0, ctx.cond,
                                   ctx.gamma);
  const Raster x_t = QSample(x0.raster(), t_eval, eps0, ctx.schedule);
  const Raster pred = PredictNoise(ctx.model, x_t, t_eval, ctx.cond, ctx.gamma);
  const double l1 = kernels::Active().l1_distance(
      eps0.data().data(), pred.data().data(), eps0.size());
  return CheckFinite(-l1 / static_cast<double>(x0.size()), AttackKind::kPia);
}

double SecmiScore(const Image& x0, const DdimContext& ctx, int t_eval,
                  int interval) {
  CheckStepGrid(t_eval, interval, ctx.schedule);
  const Trajectory traj = DdimInvert(x0.raster(), t_eval, interval, ctx);
  const Raster& x_t = traj.endpoint();
  const int t_prev = t_eval - interval;
  const Raster back = DdimSampleStep(x_t, t_eval, t_prev, ctx);
  const Raster again = DdimInvertStep(back, t_prev, t_eval, ctx);
  const double d2 = kernels::Active().scaled_sq_distance(
      again.data().data(), x_t.data().data(), 1.0, x_t.size());
  return CheckFinite(-d2 / static_cast<double>(x0.size()), AttackKind::kSecmi);
}

double ScoreImage(AttackKind kind, const Image& x0, std::uint64_t id,
                  const DdimContext& ctx, const AttackConfig& cfg) {
  switch (kind) {
    case AttackKind::kStructural: return StructuralScore(x0, ctx, cfg);
    case AttackKind::kReconstruction: return ReconstructionScore(x0, ctx, cfg);
    case AttackKind::kNaiveLoss:
      return NaiveLossScore(x0, id, ctx, cfg.t_eval, cfg.noise_seed,
                            cfg.naive_draws);
    case AttackKind::kPia: return PiaScore(x0, ctx, cfg.t_eval);
    case AttackKind::kSecmi:
      return SecmiScore(x0, ctx, cfg.t_eval, cfg.interval);
  }
  throw ParameterError("unhandled attack kind");
}

}  // namespace structmia
