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

// How structural similarity to the clean input decays along DDIM inversion,
// and how that decay differs between members and holdout images.

#ifndef STRUCTMIA_ANALYSIS_H_
#define STRUCTMIA_ANALYSIS_H_

#include <vector>

#include "structmia/attacks.h"
#include "structmia/dataset.h"

namespace structmia {

struct CurvePoint {
  int t;
  double value;
};

// SSIM(x0, clamp(x_t)) for every sample at every requested step, where x_t
// lies on one inversion trajectory per sample. The trajectory stride is the
// gcd of the requested steps.
struct SsimTable {
  std::vector<int> t;                         // ascending, distinct
  std::vector<std::vector<double>> by_sample;  // [sample][index into t]

  // Mean over samples at step t; throws ParameterError if t is not a column.
  double Mean(int t) const;
};

SsimTable ComputeSsimTable(const std::vector<Sample>& samples,
                           const TargetModel& target, std::vector<int> steps,
                           int workers = 1);

// v(t) = (mean SSIM at t + dt - mean SSIM at t) / dt over the grid.
std::vector<CurvePoint> DecreaseRate(const SsimTable& table,
                                     const std::vector<int>& t_grid, int dt);

// Mean member SSIM minus mean holdout SSIM at each grid step.
std::vector<CurvePoint> DeltaSsim(const SsimTable& members,
                                  const SsimTable& holdout,
                                  const std::vector<int>& t_grid);

// One-call forms. Throw ParameterError on empty inputs, dt < 1, negative
// steps or steps beyond the schedule.
std::vector<CurvePoint> DecreaseRateCurve(const std::vector<Sample>& samples,
                                          const TargetModel& target,
                                          const std::vector<int>& t_grid,
                                          int dt, int workers = 1);
std::vector<CurvePoint> DeltaSsimCurve(const std::vector<Sample>& members,
                                       const std::vector<Sample>& holdout,
                                       const TargetModel& target,
                                       const std::vector<int>& t_grid,
                                       int workers = 1);

// {0, step, 2 step, ..., t_last}.
std::vector<int> UniformGrid(int t_last, int step);

// Grid point with the largest value (the first on ties).
CurvePoint PeakOf(const std::vector<CurvePoint>& curve);

}  // namespace structmia

#endif  // STRUCTMIA_ANALYSIS_H_
