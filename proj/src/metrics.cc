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

#include "structmia/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "structmia/error.h"
#include "structmia/plot.h"

namespace structmia {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckScores(std::span<const double> scores, const char* which) {
  if (scores.empty()) {
    throw ParameterError(std::string(which) + " score list is empty");
  }
  for (double s : scores) {
    if (std::isnan(s)) {
      throw ParameterError(std::string(which) + " scores contain NaN");
    }
  }
}

}  // namespace

RocSummary Roc(std::span<const double> member_scores,
               std::span<const double> holdout_scores) {
  CheckScores(member_scores, "member");
  CheckScores(holdout_scores, "holdout");
  const std::int64_t pos = static_cast<std::int64_t>(member_scores.size());
  const std::int64_t neg = static_cast<std::int64_t>(holdout_scores.size());

  // (score, is_member), highest score first.
  std::vector<std::pair<double, bool>> all;
  all.reserve(pos + neg);
  for (double s : member_scores) all.emplace_back(s, true);
  for (double s : holdout_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  struct Counts {
    double threshold;
    std::int64_t tp, fp;
  };
  std::vector<Counts> sweep;
  sweep.reserve(all.size() + 2);
  sweep.push_back({kInf, 0, 0});
  std::int64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < all.size();) {
    // At threshold all[i].first, everything strictly above it is a member:
    // exactly the groups consumed so far.
    const double score = all[i].first;
    sweep.push_back({score, tp, fp});
    for (; i < all.size() && all[i].first == score; ++i) {
      (all[i].second ? tp : fp) += 1;
    }
  }
  sweep.push_back({-kInf, tp, fp});

  RocSummary out;
  out.curve.reserve(sweep.size());
  // Twice the area in units of one (member, holdout) pair, exact in integers.
  std::int64_t twice_area = 0;
  std::int64_t best_correct = -1;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const Counts& c = sweep[i];
    out.curve.push_back({c.threshold, static_cast<double>(c.fp) / neg,
                         static_cast<double>(c.tp) / pos});
    if (i > 0) {
      twice_area += (c.fp - sweep[i - 1].fp) * (c.tp + sweep[i - 1].tp);
    }
    const std::int64_t correct = c.tp + (neg - c.fp);
    if (correct > best_correct) {
      best_correct = correct;
      out.asr_tau = c.threshold;
      out.recall = static_cast<double>(c.tp) / pos;
      out.precision =
          c.tp + c.fp > 0 ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
    }
  }
  out.auc = static_cast<double>(twice_area) / (2.0 * pos * neg);
  out.asr = static_cast<double>(best_correct) / (pos + neg);
  out.tpr_at_1pct = TprAtFpr(out.curve, 0.01);
  out.tpr_at_0p1pct = TprAtFpr(out.curve, 0.001);
  return out;
}

double AucPairwiseOracle(std::span<const double> member_scores,
                         std::span<const double> holdout_scores) {
  double wins = 0.0;
  for (double m : member_scores) {
    for (double h : holdout_scores) {
      if (m > h) {
        wins += 1.0;
      } else if (m == h) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(member_scores.size()) *
                 static_cast<double>(holdout_scores.size()));
}

double TprAtFpr(const std::vector<RocPoint>& curve, double max_fpr) {
  double best = 0.0;
  for (const RocPoint& p : curve) {
    if (p.fpr <= max_fpr) best = std::max(best, p.tpr);
  }
  return best;
}

std::string RenderRocSvg(const std::vector<RocSeries>& series,
                         const std::string& title) {
  constexpr double kLogFloor = 1e-3;
  std::vector<PlotSeries> linear, logged;
  for (const RocSeries& s : series) {
    PlotSeries lin{s.name, {}}, lg{s.name, {}};
    for (const RocPoint& p : s.curve) {
      lin.points.push_back({p.fpr, p.tpr});
      lg.points.push_back({std::log10(std::max(p.fpr, kLogFloor)), p.tpr});
    }
    linear.push_back(std::move(lin));
    logged.push_back(std::move(lg));
  }
  PlotPanel left{"ROC", "FPR", "TPR", {0.0, 1.0}, {0.0, 1.0}, linear, true};
  PlotPanel right{"ROC (log FPR)", "log10 FPR", "TPR",
                  {std::log10(kLogFloor), 0.0}, {0.0, 1.0}, logged, false};
  return RenderPanels(title, {left, right});
}

}  // namespace structmia
