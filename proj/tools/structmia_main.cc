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

// structmia: command-line front end for the membership-inference toolkit.
//
// Exit codes: 0 success, 2 configuration or parameter error, 3 missing or
// unreadable artifact, 4 numeric failure (including diverged training).

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "structmia/error.h"
#include "structmia/experiments.h"

namespace {

using structmia::CommandResult;
using structmia::ExperimentConfig;

struct Options {
  std::string preset = "paper-default";
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

ExperimentConfig Resolve(const Options& o) {
  ExperimentConfig cfg = structmia::Preset(o.preset);
  if (!o.config.empty()) cfg = structmia::LoadConfig(o.config, cfg);
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw structmia::ParameterError("--set expects section.key=value, got '" +
                                      kv + "'");
    }
    structmia::SetConfigValue(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.out) cfg.out = *o.out;
  cfg.Validate();
  return cfg;
}

void PrintResult(const CommandResult& r) {
  for (const auto& row : r.rows) {
    std::string line;
    for (const auto& [k, v] : row.keys) line += k + "=" + v + " ";
    std::printf("%sauc=%s asr=%s tpr@1%%=%s\n", line.c_str(),
                structmia::FormatNumber(row.roc.auc).c_str(),
                structmia::FormatNumber(row.roc.asr).c_str(),
                structmia::FormatNumber(row.roc.tpr_at_1pct).c_str());
  }
  for (const auto& [k, v] : r.metadata) std::printf("%s=%s\n", k.c_str(), v.c_str());
}

int Fail(int code, const char* kind, const std::exception& e) {
  std::fprintf(stderr, "structmia: %s: %s\n", kind, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-based membership inference against diffusion models"};
  app.set_version_flag("--version", std::string(structmia::ToolkitVersion()));
  app.require_subcommand(1);

  Options opts;
  app.add_option("--preset", opts.preset, "built-in preset (paper-default, smoke)");
  app.add_option("--config", opts.config, "INI file applied on top of the preset");
  app.add_option("--seed", opts.seed, "master seed");
  app.add_option("--workers", opts.workers, "worker threads");
  app.add_option("--out", opts.out, "output directory");
  app.add_option("--set", opts.sets, "override one setting, section.key=value")
      ->take_all();

  const std::map<std::string, std::function<CommandResult(const ExperimentConfig&)>>
      commands = {
          {"gen", structmia::CmdGen},
          {"train", structmia::CmdTrain},
          {"attack", structmia::CmdAttack},
          {"ablate-timestep", structmia::CmdAblateTimestep},
          {"ablate-interval", structmia::CmdAblateInterval},
          {"robustness", structmia::CmdRobustness},
          {"backward-compare", structmia::CmdBackwardCompare},
          {"curves", structmia::CmdCurves},
          {"guidance-sweep", structmia::CmdGuidanceSweep},
      };
  const std::map<std::string, std::string> help = {
      {"gen", "write the dataset images and manifest"},
      {"train", "train the convolutional denoiser on the member split"},
      {"attack", "score both splits with every configured attack"},
      {"ablate-timestep", "structural attack over inversion depths"},
      {"ablate-interval", "structural attack over step intervals"},
      {"robustness", "attacks under query distortions"},
      {"backward-compare", "forward endpoint vs round-trip reconstruction"},
      {"curves", "SSIM decay and member/holdout gap along inversion"},
      {"guidance-sweep", "structural attack over guidance scales"},
  };
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const ExperimentConfig cfg = Resolve(opts);
    for (const auto& [name, fn] : commands) {
      if (app.got_subcommand(name)) {
        PrintResult(fn(cfg));
        break;
      }
    }
  } catch (const structmia::ParameterError& e) {
    return Fail(2, "parameter error", e);
  } catch (const structmia::DomainError& e) {
    return Fail(2, "domain error", e);
  } catch (const structmia::MissingArtifactError& e) {
    return Fail(3, "missing artifact", e);
  } catch (const structmia::FormatError& e) {
    return Fail(3, "malformed artifact", e);
  } catch (const structmia::IoError& e) {
    return Fail(3, "i/o error", e);
  } catch (const structmia::TrainingError& e) {
    return Fail(4, "training failed", e);
  } catch (const structmia::NumericError& e) {
    return Fail(4, "numeric failure", e);
  } catch (const std::exception& e) {
    return Fail(1, "internal error", e);
  }
  return 0;
}
