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

#include "structmia/analysis.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "structmia/error.h"
#include "structmia/parallel.h"
#include "structmia/ssim.h"

namespace structmia {

double SsimTable::Mean(int step) const {
  const auto it = std::lower_bound(t.begin(), t.end(), step);
  if (it == t.end() || *it != step) {
    throw ParameterError("SSIM table has no column for t = " +
                         std::to_string(step));
  }
  const std::size_t col = it - t.begin();
  double total = 0.0;
  for (const auto& row : by_sample) total += row[col];
  return total / static_cast<double>(by_sample.size());
}

SsimTable ComputeSsimTable(const std::vector<Sample>& samples,
                           const TargetModel& target, std::vector<int> steps,
                           int workers) {
  if (samples.empty()) throw ParameterError("no images to trace");
  if (steps.empty()) throw ParameterError("no steps requested");
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  if (steps.front() < 0 || steps.back() > target.schedule.t_max()) {
    throw ParameterError("curve steps must lie in [0, " +
                         std::to_string(target.schedule.t_max()) + "]");
  }
  int stride = 0;
  for (int s : steps) stride = std::gcd(stride, s);
  const int t_last = steps.back();

  SsimTable table;
  table.t = steps;
  table.by_sample.resize(samples.size());
  ParallelFor(samples.size(), workers, [&](std::size_t i) {
    const Sample& sample = samples[i];
    std::vector<double>& row = table.by_sample[i];
    row.assign(steps.size(), 1.0);  // SSIM(x0, x0)
    if (t_last == 0) return;
    const Trajectory traj = DdimInvert(sample.image.raster(), t_last, stride,
                                       target.ContextFor(sample));
    for (std::size_t c = 0; c < steps.size(); ++c) {
      row[c] = Ssim(sample.image.raster(), traj.steps[steps[c] / stride].state);
    }
  });
  return table;
}

std::vector<CurvePoint> DecreaseRate(const SsimTable& table,
                                     const std::vector<int>& t_grid, int dt) {
  if (dt < 1) throw ParameterError("dt must be >= 1");
  std::vector<CurvePoint> out;
  out.reserve(t_grid.size());
  for (int t : t_grid) {
    out.push_back({t, (table.Mean(t + dt) - table.Mean(t)) / dt});
  }
  return out;
}

std::vector<CurvePoint> DeltaSsim(const SsimTable& members,
                                  const SsimTable& holdout,
                                  const std::vector<int>& t_grid) {
  std::vector<CurvePoint> out;
  out.reserve(t_grid.size());
  for (int t : t_grid) out.push_back({t, members.Mean(t) - holdout.Mean(t)});
  return out;
}

std::vector<CurvePoint> DecreaseRateCurve(const std::vector<Sample>& samples,
                                          const TargetModel& target,
                                          const std::vector<int>& t_grid,
                                          int dt, int workers) {
  if (dt < 1) throw ParameterError("dt must be >= 1");
  if (t_grid.empty()) throw ParameterError("empty curve grid");
  std::vector<int> steps = t_grid;
  for (int t : t_grid) steps.push_back(t + dt);
  return DecreaseRate(ComputeSsimTable(samples, target, steps, workers),
                      t_grid, dt);
}

std::vector<CurvePoint> DeltaSsimCurve(const std::vector<Sample>& members,
                                       const std::vector<Sample>& holdout,
                                       const TargetModel& target,
                                       const std::vector<int>& t_grid,
                                       int workers) {
  if (t_grid.empty()) throw ParameterError("empty curve grid");
  return DeltaSsim(ComputeSsimTable(members, target, t_grid, workers),
                   ComputeSsimTable(holdout, target, t_grid, workers), t_grid);
}

std::vector<int> UniformGrid(int t_last, int step) {
  if (step < 1 || t_last < 0) {
    throw ParameterError("grid needs step >= 1 and t_last >= 0");
  }
  std::vector<int> grid;
  for (int t = 0; t <= t_last; t += step) grid.push_back(t);
  return grid;
}

CurvePoint PeakOf(const std::vector<CurvePoint>& curve) {
  if (curve.empty()) throw ParameterError("empty curve has no peak");
  return *std::max_element(
      curve.begin(), curve.end(),
      [](const CurvePoint& a, const CurvePoint& b) { return a.value < b.value; });
}

}  // namespace structmia
