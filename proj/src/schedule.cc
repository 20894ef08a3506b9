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

#include "structmia/schedule.h"

#include <cmath>
#include <string>

#include "structmia/error.h"

namespace structmia {

Schedule Schedule::Linear(int t_max, double beta_start, double beta_end) {
  if (t_max < 2) {
    throw ParameterError("schedule needs t_max >= 2, got " +
                         std::to_string(t_max));
  }
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw ParameterError(
        "schedule needs 0 < beta_start <= beta_end < 1, got beta_start=" +
        std::to_string(beta_start) + " beta_end=" + std::to_string(beta_end));
  }
  Schedule s;
  s.beta_.resize(t_max + 1, 0.0);
  s.alpha_bar_.resize(t_max + 1);
  s.one_minus_alpha_bar_.resize(t_max + 1);
  s.alpha_bar_[0] = 1.0;
  s.one_minus_alpha_bar_[0] = 0.0;
  const double span = beta_end - beta_start;
  for (int t = 1; t <= t_max; ++t) {
    const double beta =
        beta_start + span * static_cast<double>(t - 1) / (t_max - 1);
    s.beta_[t] = beta;
    s.alpha_bar_[t] = s.alpha_bar_[t - 1] * (1.0 - beta);
    // 1 - prod(1 - beta) accumulated directly: no cancellation near t = 1.
    s.one_minus_alpha_bar_[t] =
        s.one_minus_alpha_bar_[t - 1] + beta * s.alpha_bar_[t - 1];
  }
  return s;
}

void Schedule::CheckStep(int t) const {
  if (t < 0 || t > t_max()) {
    throw ParameterError("timestep " + std::to_string(t) +
                         " outside [0, " + std::to_string(t_max()) + "]");
  }
}

double Schedule::beta(int t) const {
  CheckStep(t);
  if (t == 0) throw ParameterError("beta is defined for t >= 1 only");
  return beta_[t];
}

double Schedule::alpha_bar(int t) const {
  CheckStep(t);
  return alpha_bar_[t];
}

double Schedule::sqrt_alpha_bar(int t) const {
  return std::sqrt(alpha_bar(t));
}

double Schedule::sqrt_one_minus_alpha_bar(int t) const {
  CheckStep(t);
  return std::sqrt(one_minus_alpha_bar_[t]);
}

}  // namespace structmia
