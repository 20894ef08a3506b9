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

#ifndef STRUCTMIA_METRICS_H_
#define STRUCTMIA_METRICS_H_

#include <span>
#include <string>
#include <vector>

namespace structmia {

struct RocPoint {
  double threshold;  // scores strictly above it are called members
  double fpr;
  double tpr;
};

struct RocSummary {
  double auc = 0.0;
  double asr = 0.0;
  double asr_tau = 0.0;
  double precision = 0.0;  // at asr_tau
  double recall = 0.0;     // at asr_tau
  double tpr_at_1pct = 0.0;
  double tpr_at_0p1pct = 0.0;
  // Sweep from threshold +inf down to -inf: starts at (0, 0), ends at (1, 1).
  std::vector<RocPoint> curve;
};

// Sweeps the threshold over +inf, every distinct score in decreasing order,
// and -inf. A score equal to the threshold counts as a nonmember.
//
//   auc        trapezoidal area under the curve (equals the pairwise
//              probability P(member > holdout) + P(tie) / 2)
//   asr        best (TP + TN) / (P + N) over the sweep; asr_tau is the
//              largest threshold reaching it
//   precision  TP / (TP + FP) at asr_tau, 0 when nothing is called member
//   tpr_at_q   best TPR over sweep points with FPR <= q, no interpolation
//
// Throws ParameterError if either list is empty or holds a NaN.
RocSummary Roc(std::span<const double> member_scores,
               std::span<const double> holdout_scores);

// O(n m) pair count (#(m > h) + #(m == h) / 2) / (n m). Kept independent of
// Roc so the two can check each other.
double AucPairwiseOracle(std::span<const double> member_scores,
                         std::span<const double> holdout_scores);

// The TPR reported at FPR budget q by the rule above.
double TprAtFpr(const std::vector<RocPoint>& curve, double max_fpr);

// SVG with two panels: linear FPR axis and log10 FPR axis (from 1e-3).
// series pairs a legend name with its curve.
struct RocSeries {
  std::string name;
  std::vector<RocPoint> curve;
};
std::string RenderRocSvg(const std::vector<RocSeries>& series,
                         const std::string& title);

}  // namespace structmia

#endif  // STRUCTMIA_METRICS_H_
