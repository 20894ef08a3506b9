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

// Experiment drivers behind the CLI subcommands. Each Cmd* function reads
// its inputs, writes its result files under cfg.out and returns the rows it
// wrote. Per-image work is spread over cfg.workers threads; every output is
// assembled in image-id order, so results do not depend on the worker count.

#ifndef STRUCTMIA_EXPERIMENTS_H_
#define STRUCTMIA_EXPERIMENTS_H_

#include <memory>
#include <string>
#include <vector>

#include "structmia/attacks.h"
#include "structmia/config.h"
#include "structmia/dataset.h"
#include "structmia/denoiser.h"
#include "structmia/distortions.h"
#include "structmia/metrics.h"
#include "structmia/report.h"

namespace structmia {

// The dataset named by cfg.dataset_dir, or the generated one.
Dataset LoadOrGenerateDataset(const ExperimentConfig& cfg);

// Oracle over the dataset's members, or the trained model at
// cfg.ModelPath() (MissingArtifactError if absent).
std::unique_ptr<EpsilonModel> LoadModel(const ExperimentConfig& cfg,
                                        const Dataset& dataset,
                                        const Schedule& schedule);

// Records for every member and holdout sample in id order. The distortion
// (kNone for clean queries) is applied to both splits before scoring.
std::vector<AttackRecord> ScoreDataset(
    AttackKind kind, const Dataset& dataset, const TargetModel& target,
    const AttackConfig& cfg, int workers,
    const DistortionSpec& distortion = DistortionSpec());

// ROC over the member and holdout records.
RocSummary Summarize(const std::vector<AttackRecord>& records);

// ScoreDataset followed by Summarize.
struct AttackResult {
  AttackKind kind;
  std::vector<AttackRecord> records;
  RocSummary roc;
};
AttackResult RunAttack(AttackKind kind, const Dataset& dataset,
                       const TargetModel& target, const AttackConfig& cfg,
                       int workers,
                       const DistortionSpec& distortion = DistortionSpec());

struct CommandResult {
  std::vector<SummaryRow> rows;
  Metadata metadata;
};

// Writes the dataset (images + manifest.csv) to cfg.dataset_dir, or to
// <out>/dataset when that is empty.
CommandResult CmdGen(const ExperimentConfig& cfg);
// Trains the network and writes the model file and train_log.csv.
CommandResult CmdTrain(const ExperimentConfig& cfg);
// records.csv, summary.csv, roc_<attack>.csv, roc.svg.
CommandResult CmdAttack(const ExperimentConfig& cfg);
// ablate_timestep.csv: structural attack over cfg.timestep_grid.
CommandResult CmdAblateTimestep(const ExperimentConfig& cfg);
// ablate_interval.csv: structural attack over cfg.interval_grid.
CommandResult CmdAblateInterval(const ExperimentConfig& cfg);
// robustness.csv: every attack, clean and under each distortion.
CommandResult CmdRobustness(const ExperimentConfig& cfg);
// backward_compare.csv: forward-endpoint vs reconstruction scoring.
CommandResult CmdBackwardCompare(const ExperimentConfig& cfg);
// curves_*.csv and curves.svg.
CommandResult CmdCurves(const ExperimentConfig& cfg);
// guidance_sweep.csv: structural attack over cfg.guidance_grid.
CommandResult CmdGuidanceSweep(const ExperimentConfig& cfg);

}  // namespace structmia

#endif  // STRUCTMIA_EXPERIMENTS_H_
