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

#include "structmia/experiments.h"

#include <algorithm>
#include <cstdio>

#include "structmia/analysis.h"
#include "structmia/conv_denoiser.h"
#include "structmia/error.h"
#include "structmia/parallel.h"
#include "structmia/plot.h"
#include "structmia/ssim.h"

namespace structmia {
namespace {

std::vector<const Sample*> AllSamples(const Dataset& dataset) {
  std::vector<const Sample*> all;
  for (const Sample& s : dataset.members) all.push_back(&s);
  for (const Sample& s : dataset.holdout) all.push_back(&s);
  return all;
}

// Dataset, schedule and model shared by the attack-style commands.
struct Setup {
  ExperimentConfig cfg;
  Dataset dataset;
  std::string fingerprint;
  Schedule schedule;
  std::unique_ptr<EpsilonModel> model;

  explicit Setup(const ExperimentConfig& c)
      : cfg(c),
        dataset(LoadOrGenerateDataset(c)),
        fingerprint(DatasetFingerprint(dataset)),
        schedule(c.MakeSchedule()),
        model(LoadModel(c, dataset, schedule)) {}

  TargetModel Target(double gamma) const {
    return TargetModel{*model, schedule, cfg.class_conditional, gamma};
  }
  TargetModel Target() const { return Target(cfg.attack.gamma); }

  Metadata BaseMetadata() const {
    return {{"dataset_fingerprint", fingerprint},
            {"model", model->Describe()}};
  }
  void Write(const std::string& file, std::string_view command,
             const Metadata& metadata, const std::string& body) const {
    WriteTextFile(cfg.out / file, Preamble(cfg, command, metadata) + body);
  }
};

void Append(Metadata& a, const Metadata& b) { a.insert(a.end(), b.begin(), b.end()); }

std::string Str(int v) { return std::to_string(v); }

void DumpTrajectories(const Setup& s, const AttackConfig& cfg) {
  const auto all = AllSamples(s.dataset);
  const TargetModel target = s.Target();
  std::vector<std::string> rows(all.size());
  ParallelFor(all.size(), s.cfg.workers, [&](std::size_t i) {
    const Sample& sample = *all[i];
    const Trajectory traj = DdimInvert(sample.image.raster(), cfg.t_total,
                                       cfg.interval, target.ContextFor(sample));
    for (const TrajectoryStep& step : traj.steps) {
      const Image state = Image::Clamped(step.state);
      SaveImage(state, s.cfg.out / "trajectories" /
                           (Str(sample.id) + "_t" + Str(step.t) + ".png"));
      rows[i] += Str(sample.id) + "," + Str(step.t) + "," +
                 FormatNumber(Ssim(sample.image, state)) + "\n";
    }
  });
  std::string body = "id,t,ssim\n";
  for (const std::string& r : rows) body += r;
  s.Write("trajectories.csv", "attack", s.BaseMetadata(), body);
}

}  // namespace

Dataset LoadOrGenerateDataset(const ExperimentConfig& cfg) {
  if (!cfg.dataset_dir.empty()) {
    return ReadDataset(cfg.dataset_dir / "manifest.csv");
  }
  return GenerateShapesDataset(cfg.DatasetSpec());
}

std::unique_ptr<EpsilonModel> LoadModel(const ExperimentConfig& cfg,
                                        const Dataset& dataset,
                                        const Schedule& schedule) {
  if (cfg.backend == Backend::kOracle) {
    return std::make_unique<OracleDenoiser>(dataset.MemberImages(),
                                            dataset.MemberLabels(),
                                            dataset.num_classes, schedule);
  }
  auto model = std::make_unique<ConvDenoiser>(ConvDenoiser::Load(cfg.ModelPath()));
  const ConvNetArch& a = model->arch();
  const Shape expected{a.height, a.width, a.channels};
  if (!dataset.members.empty() && dataset.members.front().image.shape() != expected) {
    throw ParameterError("model " + cfg.ModelPath().string() + " expects " +
                         ToString(expected) + " images, dataset has " +
                         ToString(dataset.members.front().image.shape()));
  }
  return model;
}

std::vector<AttackRecord> ScoreDataset(AttackKind kind, const Dataset& dataset,
                                       const TargetModel& target,
                                       const AttackConfig& cfg, int workers,
                                       const DistortionSpec& distortion) {
  cfg.Validate(target.schedule);
  distortion.Validate();
  const auto all = AllSamples(dataset);
  std::vector<AttackRecord> records(all.size());
  ParallelFor(all.size(), workers, [&](std::size_t i) {
    const Sample& s = *all[i];
    const auto id = static_cast<std::uint64_t>(s.id);
    const Image query = ApplyDistortion(distortion, s.image, id);
    records[i] = {s.id, i < dataset.members.size() ? Split::kMember : Split::kHoldout,
                  kind, ScoreImage(kind, query, id, target.ContextFor(s), cfg)};
  });
  return records;
}

RocSummary Summarize(const std::vector<AttackRecord>& records) {
  std::vector<double> member, holdout;
  for (const AttackRecord& r : records) {
    (r.split == Split::kMember ? member : holdout).push_back(r.score);
  }
  return Roc(member, holdout);
}

AttackResult RunAttack(AttackKind kind, const Dataset& dataset,
                       const TargetModel& target, const AttackConfig& cfg,
                       int workers, const DistortionSpec& distortion) {
  AttackResult r{kind, ScoreDataset(kind, dataset, target, cfg, workers, distortion), {}};
  r.roc = Summarize(r.records);
  return r;
}

CommandResult CmdGen(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Dataset dataset = GenerateShapesDataset(cfg.DatasetSpec());
  const auto dir = cfg.dataset_dir.empty() ? cfg.out / "dataset" : cfg.dataset_dir;
  WriteDataset(dataset, dir);
  return {{}, {{"dataset_dir", dir.string()},
               {"dataset_fingerprint", DatasetFingerprint(dataset)}}};
}

CommandResult CmdTrain(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Dataset dataset = LoadOrGenerateDataset(cfg);
  const Schedule schedule = cfg.MakeSchedule();
  if (dataset.members.empty()) throw ParameterError("dataset has no members");
  const Shape shape = dataset.members.front().image.shape();
  ConvNetArch arch = cfg.arch;
  arch.height = shape.height;
  arch.width = shape.width;
  arch.channels = shape.channels;
  arch.num_classes = dataset.num_classes;
  const TrainConfig tc = cfg.Training();
  ConvDenoiser model(arch, tc.seed);
  std::string log = "epoch,mean_loss\n";
  const auto history = model.Train(
      dataset.MemberImages(), dataset.MemberLabels(), schedule, tc,
      [&](const EpochReport& r, const ConvDenoiser&) {
        log += Str(r.epoch) + "," + FormatNumber(r.mean_loss) + "\n";
        std::fprintf(stderr, "epoch %d loss %.6f\n", r.epoch, r.mean_loss);
      });
  model.Save(cfg.ModelPath());
  const Metadata meta = {{"dataset_fingerprint", DatasetFingerprint(dataset)},
                         {"model", model.Describe()},
                         {"model_path", cfg.ModelPath().string()},
                         {"final_loss", FormatNumber(history.back().mean_loss)}};
  WriteTextFile(cfg.out / "train_log.csv", Preamble(cfg, "train", meta) + log);
  return {{}, meta};
}

CommandResult CmdAttack(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  const AttackConfig ac = cfg.Attack();
  const TargetModel target = s.Target();
  CommandResult result;
  result.metadata = s.BaseMetadata();
  std::vector<AttackRecord> all_records;
  std::vector<RocSeries> series;
  for (AttackKind kind : cfg.attacks) {
    AttackResult r = RunAttack(kind, s.dataset, target, ac, cfg.workers);
    const std::string name(AttackName(kind));
    all_records.insert(all_records.end(), r.records.begin(), r.records.end());
    s.Write("roc_" + name + ".csv", "attack", result.metadata, RocCsv(r.roc.curve));
    series.push_back({name, r.roc.curve});
    result.rows.push_back({{{"attack", name}}, r.roc});
  }
  s.Write("records.csv", "attack", result.metadata, RecordsCsv(all_records));
  s.Write("summary.csv", "attack", result.metadata, SummaryCsv(result.rows));
  WriteTextFile(cfg.out / "roc.svg", RenderRocSvg(series, "Membership ROC"));
  if (cfg.dump_trajectories) DumpTrajectories(s, ac);
  return result;
}

CommandResult CmdAblateTimestep(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  CommandResult result;
  result.metadata = s.BaseMetadata();
  for (int t_total : cfg.timestep_grid) {
    AttackConfig ac = cfg.Attack();
    ac.t_total = t_total;
    const AttackResult r = RunAttack(AttackKind::kStructural, s.dataset,
                                     s.Target(), ac, cfg.workers);
    result.rows.push_back({{{"t_total", Str(t_total)},
                            {"interval", Str(ac.interval)},
                            {"queries", Str(t_total / ac.interval)},
                            {"attack", "structural"}},
                           r.roc});
  }
  s.Write("ablate_timestep.csv", "ablate-timestep", result.metadata,
          SummaryCsv(result.rows));
  return result;
}

CommandResult CmdAblateInterval(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  CommandResult result;
  result.metadata = s.BaseMetadata();
  for (int interval : cfg.interval_grid) {
    AttackConfig ac = cfg.Attack();
    ac.t_total = cfg.interval_ablation_t_total;
    ac.interval = interval;
    // The baselines' t_eval is irrelevant here; keep it on the grid.
    ac.t_eval = ac.t_total;
    const AttackResult r = RunAttack(AttackKind::kStructural, s.dataset,
                                     s.Target(), ac, cfg.workers);
    result.rows.push_back({{{"t_total", Str(ac.t_total)},
                            {"interval", Str(interval)},
                            {"queries", Str(ac.t_total / interval)},
                            {"attack", "structural"}},
                           r.roc});
  }
  s.Write("ablate_interval.csv", "ablate-interval", result.metadata,
          SummaryCsv(result.rows));
  return result;
}

CommandResult CmdRobustness(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  CommandResult result;
  result.metadata = s.BaseMetadata();
  std::vector<DistortionSpec> specs = {cfg.Distortion(DistortionKind::kNone)};
  for (DistortionKind k : cfg.distortions) {
    if (k != DistortionKind::kNone) specs.push_back(cfg.Distortion(k));
  }
  if (cfg.dump_distorted) {
    for (const DistortionSpec& spec : specs) {
      if (spec.kind == DistortionKind::kNone) continue;
      for (const Sample* sample : AllSamples(s.dataset)) {
        SaveImage(ApplyDistortion(spec, sample->image, sample->id),
                  cfg.out / "distorted" / std::string(DistortionName(spec.kind)) /
                      (Str(sample->id) + ".png"));
      }
    }
  }
  for (AttackKind kind : cfg.attacks) {
    for (const DistortionSpec& spec : specs) {
      const AttackResult r = RunAttack(kind, s.dataset, s.Target(), cfg.Attack(),
                                       cfg.workers, spec);
      result.rows.push_back({{{"attack", std::string(AttackName(kind))},
                              {"distortion", std::string(DistortionName(spec.kind))},
                              {"magnitude", FormatNumber(spec.magnitude)},
                              {"seed", std::to_string(spec.seed)}},
                             r.roc});
    }
  }
  s.Write("robustness.csv", "robustness", result.metadata,
          SummaryCsv(result.rows));
  return result;
}

CommandResult CmdBackwardCompare(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  CommandResult result;
  result.metadata = s.BaseMetadata();
  for (AttackKind kind : {AttackKind::kStructural, AttackKind::kReconstruction}) {
    const AttackResult r = RunAttack(kind, s.dataset, s.Target(), cfg.Attack(),
                                     cfg.workers);
    result.rows.push_back(
        {{{"scoring", kind == AttackKind::kStructural ? "forward" : "reconstruction"},
          {"dataset_fingerprint", s.fingerprint}},
         r.roc});
  }
  s.Write("backward_compare.csv", "backward-compare", result.metadata,
          SummaryCsv(result.rows));
  return result;
}

CommandResult CmdCurves(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  const std::vector<int> grid = UniformGrid(cfg.curve_t_last, cfg.curve_step);
  std::vector<int> steps = grid;
  for (int t : grid) steps.push_back(t + cfg.curve_dt);
  const TargetModel target = s.Target();
  const SsimTable members =
      ComputeSsimTable(s.dataset.members, target, steps, cfg.workers);
  const SsimTable holdout =
      ComputeSsimTable(s.dataset.holdout, target, steps, cfg.workers);
  const auto delta = DeltaSsim(members, holdout, grid);
  const auto rate_m = DecreaseRate(members, grid, cfg.curve_dt);
  const auto rate_h = DecreaseRate(holdout, grid, cfg.curve_dt);
  const CurvePoint peak = PeakOf(delta);

  CommandResult result;
  result.metadata = s.BaseMetadata();
  Append(result.metadata, {{"curve_dt", Str(cfg.curve_dt)},
                           {"delta_ssim_peak_t", Str(peak.t)},
                           {"delta_ssim_peak_value", FormatNumber(peak.value)}});
  s.Write("curves_delta_ssim.csv", "curves", result.metadata, CurveCsv(delta));
  s.Write("curves_decrease_rate_member.csv", "curves", result.metadata,
          CurveCsv(rate_m));
  s.Write("curves_decrease_rate_holdout.csv", "curves", result.metadata,
          CurveCsv(rate_h));
  std::string means = "t,member,holdout\n";
  PlotSeries pm{"member mean SSIM", {}}, ph{"holdout mean SSIM", {}};
  for (int t : grid) {
    means += Str(t) + "," + FormatNumber(members.Mean(t)) + "," +
             FormatNumber(holdout.Mean(t)) + "\n";
    pm.points.push_back({double(t), members.Mean(t)});
    ph.points.push_back({double(t), holdout.Mean(t)});
  }
  s.Write("curves_mean_ssim.csv", "curves", result.metadata, means);

  PlotSeries pd{"delta SSIM", {}}, rm{"v(t) member", {}}, rh{"v(t) holdout", {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pd.points.push_back({double(grid[i]), delta[i].value});
    rm.points.push_back({double(grid[i]), rate_m[i].value});
    rh.points.push_back({double(grid[i]), rate_h[i].value});
  }
  const std::pair<double, double> xr{0.0, double(cfg.curve_t_last)};
  std::vector<PlotPanel> panels = {
      {"Mean SSIM to x0", "t", "SSIM", xr, YRangeOf({pm, ph}), {pm, ph}, false},
      {"SSIM decrease rate", "t", "v(t)", xr, YRangeOf({rm, rh}), {rm, rh}, false},
      {"Member minus holdout", "t", "delta SSIM", xr, YRangeOf({pd}), {pd}, false}};
  WriteTextFile(cfg.out / "curves.svg", RenderPanels("Structure along inversion", panels));
  return result;
}

CommandResult CmdGuidanceSweep(const ExperimentConfig& cfg) {
  cfg.Validate();
  const Setup s(cfg);
  if (!cfg.class_conditional || s.model->num_classes() == 0) {
    throw ParameterError(
        "guidance sweep needs class-conditional queries on a class-aware model");
  }
  CommandResult result;
  result.metadata = s.BaseMetadata();
  double lo = 1.0, hi = 0.0;
  for (double gamma : cfg.guidance_grid) {
    AttackConfig ac = cfg.Attack();
    ac.gamma = gamma;
    const AttackResult r = RunAttack(AttackKind::kStructural, s.dataset,
                                     s.Target(gamma), ac, cfg.workers);
    lo = std::min(lo, r.roc.auc);
    hi = std::max(hi, r.roc.auc);
    result.rows.push_back({{{"gamma", FormatNumber(gamma)}, {"attack", "structural"}},
                           r.roc});
  }
  Append(result.metadata, {{"auc_spread", FormatNumber(hi - lo)}});
  s.Write("guidance_sweep.csv", "guidance-sweep", result.metadata,
          SummaryCsv(result.rows));
  return result;
}

}  // namespace structmia
