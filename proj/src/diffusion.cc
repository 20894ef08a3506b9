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

#include "structmia/diffusion.h"

#include <string>

#include "structmia/error.h"
#include "structmia/kernels.h"

namespace structmia {
namespace {

void CheckSameShape(const Raster& a, const Raster& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw ParameterError(std::string(what) + ": shape " + ToString(a.shape()) +
                         " differs from " + ToString(b.shape()));
  }
}

// Moves x from step `from` to step `to` along the deterministic DDIM path
// defined by eps. Shared by both directions.
Raster DdimMove(const Raster& x, int from, int to, const DdimContext& ctx) {
  const Schedule& s = ctx.schedule;
  const Raster eps = PredictNoise(ctx.model, x, from, ctx.cond, ctx.gamma);
  CheckSameShape(eps, x, "noise prediction");
  const double ratio = s.sqrt_alpha_bar(to) / s.sqrt_alpha_bar(from);
  const double eps_coeff = s.sqrt_one_minus_alpha_bar(to) -
                           ratio * s.sqrt_one_minus_alpha_bar(from);
  Raster out(x.shape());
  kernels::Active().axpby(ratio, x.data().data(), eps_coeff, eps.data().data(),
                          out.data().data(), out.size());
  return out;
}

}  // namespace

Raster QSample(const Raster& x0, int t, const Raster& eps,
               const Schedule& schedule) {
  CheckSameShape(eps, x0, "q_sample noise");
  if (t < 1 || t > schedule.t_max()) {
    throw ParameterError("q_sample timestep " + std::to_string(t) +
                         " outside [1, " + std::to_string(schedule.t_max()) +
                         "]");
  }
  Raster out(x0.shape());
  kernels::Active().axpby(schedule.sqrt_alpha_bar(t), x0.data().data(),
                          schedule.sqrt_one_minus_alpha_bar(t),
                          eps.data().data(), out.data().data(), out.size());
  return out;
}

Raster DdimInvertStep(const Raster& x_t, int t, int t_next,
                      const DdimContext& ctx) {
  if (t < 0 || t >= t_next || t_next > ctx.schedule.t_max()) {
    throw ParameterError("inversion step needs 0 <= t < t_next <= t_max, got " +
                         std::to_string(t) + " -> " + std::to_string(t_next));
  }
  return DdimMove(x_t, t, t_next, ctx);
}

Raster DdimSampleStep(const Raster& x_t, int t, int t_prev,
                      const DdimContext& ctx) {
  if (t_prev < 0 || t_prev >= t || t > ctx.schedule.t_max()) {
    throw ParameterError("sampling step needs 0 <= t_prev < t <= t_max, got " +
                         std::to_string(t) + " -> " + std::to_string(t_prev));
  }
  return DdimMove(x_t, t, t_prev, ctx);
}

void CheckStepGrid(int t_total, int interval, const Schedule& schedule) {
  if (interval < 1 || t_total < 1) {
    throw ParameterError("t_total and interval must be positive, got " +
                         std::to_string(t_total) + " and " +
                         std::to_string(interval));
  }
  if (t_total % interval != 0) {
    throw ParameterError("interval " + std::to_string(interval) +
                         " does not divide t_total " + std::to_string(t_total));
  }
  if (t_total > schedule.t_max()) {
    throw ParameterError("t_total " + std::to_string(t_total) +
                         " exceeds schedule length " +
                         std::to_string(schedule.t_max()));
  }
}

Trajectory DdimInvert(const Raster& x0, int t_total, int interval,
                      const DdimContext& ctx) {
  CheckStepGrid(t_total, interval, ctx.schedule);
  Trajectory traj;
  traj.direction = Trajectory::Direction::kForward;
  traj.steps.reserve(t_total / interval + 1);
  traj.steps.push_back({0, x0});
  for (int t = 0; t < t_total; t += interval) {
    traj.steps.push_back(
        {t + interval, DdimInvertStep(traj.steps.back().state, t,
                                      t + interval, ctx)});
  }
  return traj;
}

Trajectory DdimSample(const Raster& x_start, int t_start, int interval,
                      const DdimContext& ctx) {
  CheckStepGrid(t_start, interval, ctx.schedule);
  Trajectory traj;
  traj.direction = Trajectory::Direction::kBackward;
  traj.steps.reserve(t_start / interval + 1);
  traj.steps.push_back({t_start, x_start});
  for (int t = t_start; t > 0; t -= interval) {
    traj.steps.push_back(
        {t - interval, DdimSampleStep(traj.steps.back().state, t,
                                      t - interval, ctx)});
  }
  return traj;
}

Image Reconstruct(const Image& x0, int t_total, int interval,
                  const DdimContext& ctx) {
  const Trajectory forward = DdimInvert(x0.raster(), t_total, interval, ctx);
  const Trajectory backward =
      DdimSample(forward.endpoint(), t_total, interval, ctx);
  return Image::Clamped(backward.endpoint());
}

}  // namespace structmia
