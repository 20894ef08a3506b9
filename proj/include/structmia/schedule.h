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

#ifndef STRUCTMIA_SCHEDULE_H_
#define STRUCTMIA_SCHEDULE_H_

#include <vector>

namespace structmia {

// Discrete variance schedule. Steps run 1..t_max; step 0 is the clean image
// with alpha_bar(0) == 1 exactly.
class Schedule {
 public:
  static constexpr int kDefaultSteps = 1000;
  static constexpr double kDefaultBetaStart = 1e-4;
  static constexpr double kDefaultBetaEnd = 0.02;

  // beta_t interpolated linearly over t = 1..t_max, both endpoints included.
  // Requires 0 < beta_start <= beta_end < 1 and t_max >= 2; throws
  // ParameterError otherwise.
  static Schedule Linear(int t_max = kDefaultSteps,
                         double beta_start = kDefaultBetaStart,
                         double beta_end = kDefaultBetaEnd);

  int t_max() const { return static_cast<int>(beta_.size()) - 1; }

  // Valid for 1 <= t <= t_max.
  double beta(int t) const;
  // Valid for 0 <= t <= t_max.
  double alpha_bar(int t) const;
  double sqrt_alpha_bar(int t) const;
  // sqrt(1 - alpha_bar(t)), computed from the running product of alphas
  // without cancellation.
  double sqrt_one_minus_alpha_bar(int t) const;

 private:
  Schedule() = default;
  void CheckStep(int t) const;

  std::vector<double> beta_;  // beta_[0] unused
  std::vector<double> alpha_bar_;
  std::vector<double> one_minus_alpha_bar_;
};

}  // namespace structmia

#endif  // STRUCTMIA_SCHEDULE_H_
