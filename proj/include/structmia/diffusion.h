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

#ifndef STRUCTMIA_DIFFUSION_H_
#define STRUCTMIA_DIFFUSION_H_

#include <vector>

#include "structmia/denoiser.h"
#include "structmia/image.h"
#include "structmia/schedule.h"

namespace structmia {

// What every deterministic DDIM step needs besides the state: the noise
// predictor, how to condition it, and the schedule.
struct DdimContext {
  const EpsilonModel& model;
  const Schedule& schedule;
  Condition cond = Condition::Unconditional();
  double gamma = 1.0;  // guidance scale, used for class conditions only
};

struct TrajectoryStep {
  int t;
  Raster state;
};

// Visited (t, state) pairs. Forward trajectories start at t = 0 with the
// clean input and t strictly increases; backward ones strictly decrease.
struct Trajectory {
  enum class Direction { kForward, kBackward };

  Direction direction = Direction::kForward;
  std::vector<TrajectoryStep> steps;

  const Raster& endpoint() const { return steps.back().state; }
  // Number of model evaluations that produced it.
  int queries() const { return static_cast<int>(steps.size()) - 1; }
};

// Closed-form forward corruption sqrt(abar_t) x0 + sqrt(1 - abar_t) eps for
// 1 <= t <= t_max. The result is an unclamped raster.
Raster QSample(const Raster& x0, int t, const Raster& eps,
               const Schedule& schedule);

// One deterministic DDIM inversion step from t to t_next > t:
//
//   x_next = sqrt(abar_next) * (x_t - sqrt(1 - abar_t) eps) / sqrt(abar_t)
//            + sqrt(1 - abar_next) eps,   eps = eps(x_t, t).
Raster DdimInvertStep(const Raster& x_t, int t, int t_next,
                      const DdimContext& ctx);

// The reverse step from t to t_prev < t; same update with eps evaluated at
// (x_t, t).
Raster DdimSampleStep(const Raster& x_t, int t, int t_prev,
                      const DdimContext& ctx);

// Visits t = 0, interval, 2 interval, ..., t_total. interval must divide
// t_total and t_total must not exceed the schedule length.
Trajectory DdimInvert(const Raster& x0, int t_total, int interval,
                      const DdimContext& ctx);

// Visits t_start, t_start - interval, ..., 0.
Trajectory DdimSample(const Raster& x_start, int t_start, int interval,
                      const DdimContext& ctx);

// Inverts to t_total, samples back to 0 and clamps the result into an image.
Image Reconstruct(const Image& x0, int t_total, int interval,
                  const DdimContext& ctx);

// Throws ParameterError unless 1 <= interval, interval divides t_total and
// t_total <= t_max.
void CheckStepGrid(int t_total, int interval, const Schedule& schedule);

}  // namespace structmia

#endif  // STRUCTMIA_DIFFUSION_H_
