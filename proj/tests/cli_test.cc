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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "structmia/error.h"
#include "structmia/experiments.h"
#include "test_util.h"

namespace structmia {
namespace {

using testing::TempDir;

int RunCli(const std::string& args) {
  const std::string cmd = std::string(STRUCTMIA_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, ExitCodes) {
  const auto dir = TempDir("cli_codes");
  const std::string out = "--preset smoke --out " + dir.string();
  EXPECT_EQ(RunCli(out + " attack"), 0);
  EXPECT_EQ(RunCli(out + " --set dataset.size=8 gen"), 2);
  EXPECT_EQ(RunCli(out + " --set attack.interval=30 attack"), 2);
  EXPECT_EQ(RunCli(out + " --set model.backend=trained attack"), 3);
  EXPECT_EQ(RunCli(out + " --config " + (dir / "nope.ini").string() + " attack"), 3);
  EXPECT_EQ(RunCli(out + " --set train.lr=1e9 --set train.epochs=30 train"), 4);
  EXPECT_EQ(RunCli(out + " frobnicate"), 2);
  EXPECT_EQ(RunCli("--version"), 0);
}

TEST(Cli, AttackWritesSummaryWithAucColumn) {
  const auto dir = TempDir("cli_attack");
  ASSERT_EQ(RunCli("--preset smoke --set attack.attacks=structural --out " +
                   dir.string() + " attack"),
            0);
  const std::string summary = Slurp(dir / "summary.csv");
  EXPECT_NE(summary.find("attack,auc,asr,asr_tau,precision,recall"), std::string::npos);
  EXPECT_NE(summary.find("\nstructural,"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "records.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "roc_structural.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "roc.svg"));
}

TEST(Cli, GenIsRepeatableAndCreatesDirectories) {
  const auto dir = TempDir("cli_gen");
  const auto target = dir / "a" / "b";
  ASSERT_EQ(RunCli("--preset smoke --set dataset.dir=" + target.string() + " gen"), 0);
  const std::string first = Slurp(target / "manifest.csv");
  ASSERT_EQ(RunCli("--preset smoke --set dataset.dir=" + target.string() + " gen"), 0);
  EXPECT_EQ(first, Slurp(target / "manifest.csv"));
  // The written dataset can be attacked directly.
  EXPECT_EQ(RunCli("--preset smoke --set dataset.dir=" + target.string() + " --out " +
                   (dir / "r").string() + " attack"),
            0);
}

TEST(Experiments, RowsCarryTheExpectedKeys) {
  ExperimentConfig cfg = Preset("smoke");
  cfg.out = TempDir("exp_rows");
  const CommandResult ti = CmdAblateTimestep(cfg);
  ASSERT_EQ(ti.rows.size(), cfg.timestep_grid.size());
  EXPECT_EQ(ti.rows[2].keys[0], (std::pair<std::string, std::string>{"t_total", "200"}));
  EXPECT_EQ(ti.rows[2].keys[2], (std::pair<std::string, std::string>{"queries", "4"}));

  const CommandResult iv = CmdAblateInterval(cfg);
  ASSERT_EQ(iv.rows.size(), 5u);
  EXPECT_EQ(iv.rows.back().keys[2].second, "1");  // t_i = 100 is a single step

  const CommandResult rb = CmdRobustness(cfg);
  EXPECT_EQ(rb.rows.size(), 4u * 5u);  // four attacks, control + four distortions
  EXPECT_EQ(rb.rows[0].keys[1].second, "none");
  EXPECT_EQ(rb.rows[1].keys[3].second, std::to_string(cfg.seed));

  const CommandResult bc = CmdBackwardCompare(cfg);
  ASSERT_EQ(bc.rows.size(), 2u);
  EXPECT_EQ(bc.rows[0].keys[1], bc.rows[1].keys[1]);
  // The forward row is the attack command's structural row.
  cfg.attacks = {AttackKind::kStructural};
  const CommandResult at = CmdAttack(cfg);
  EXPECT_EQ(bc.rows[0].roc.auc, at.rows[0].roc.auc);
  EXPECT_EQ(bc.rows[0].roc.asr, at.rows[0].roc.asr);
}

TEST(Experiments, GuidanceZeroEqualsUnconditionalRun) {
  ExperimentConfig cfg = Preset("smoke");
  cfg.out = TempDir("exp_guidance");
  cfg.guidance_grid = {0.0};
  const CommandResult g = CmdGuidanceSweep(cfg);
  const Dataset d = LoadOrGenerateDataset(cfg);
  const Schedule s = cfg.MakeSchedule();
  const auto model = LoadModel(cfg, d, s);
  const AttackResult plain = RunAttack(AttackKind::kStructural, d,
                                       TargetModel{*model, s, false}, cfg.Attack(), 1);
  EXPECT_EQ(g.rows[0].roc.auc, plain.roc.auc);
  cfg.class_conditional = false;
  EXPECT_THROW(CmdGuidanceSweep(cfg), ParameterError);
}

TEST(Experiments, CurvesFlatWhenMembersEqualHoldout) {
  ExperimentConfig cfg = Preset("smoke");
  cfg.out = TempDir("exp_curves");
  Dataset d = LoadOrGenerateDataset(cfg);
  const Schedule s = cfg.MakeSchedule();
  const auto model = LoadModel(cfg, d, s);
  const TargetModel target{*model, s};
  for (const CurvePoint& p :
       DeltaSsimCurve(d.members, d.members, target, UniformGrid(200, 50))) {
    EXPECT_EQ(p.value, 0.0);
  }
  const CommandResult c = CmdCurves(cfg);
  bool has_peak = false;
  for (const auto& [k, v] : c.metadata) has_peak |= k == "delta_ssim_peak_t";
  EXPECT_TRUE(has_peak);
  EXPECT_TRUE(std::filesystem::exists(cfg.out / "curves.svg"));
}

TEST(Experiments, WorkerCountAndRerunsAreByteIdentical) {
  ExperimentConfig cfg = Preset("smoke");
  const auto one = TempDir("exp_det1"), eight = TempDir("exp_det8"),
             again = TempDir("exp_det1b");
  cfg.out = one;
  CmdAttack(cfg);
  cfg.out = again;
  CmdAttack(cfg);
  cfg.workers = 8;
  cfg.out = eight;
  CmdAttack(cfg);
  for (const char* f : {"records.csv", "summary.csv", "roc_pia.csv", "roc.svg"}) {
    EXPECT_EQ(Slurp(one / f), Slurp(eight / f)) << f;
    EXPECT_EQ(Slurp(one / f), Slurp(again / f)) << f;
  }
}

}  // namespace
}  // namespace structmia
