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

#include "structmia/config.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "structmia/digest.h"
#include "structmia/error.h"

namespace structmia {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void Bad(const std::string& key, const std::string& value,
                      const std::string& want) {
  throw ParameterError("config " + key + " = '" + value + "': expected " + want);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& raw,
              const char* want) {
  const std::string v = Trim(raw);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    Bad(key, raw, want);
  }
  return out;
}

int ParseInt(const std::string& k, const std::string& v) {
  return ParseNumber<int>(k, v, "an integer");
}
std::uint64_t ParseU64(const std::string& k, const std::string& v) {
  return ParseNumber<std::uint64_t>(k, v, "a non-negative integer");
}
double ParseDouble(const std::string& k, const std::string& v) {
  return ParseNumber<double>(k, v, "a number");
}
bool ParseBool(const std::string& k, const std::string& raw) {
  const std::string v = Trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  Bad(k, raw, "true or false");
}

std::vector<std::string> SplitList(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Shortest text that parses back to exactly v.
std::string Fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T, typename F>
std::string Join(const std::vector<T>& items, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += fmt(items[i]);
  }
  return out;
}

struct Field {
  std::string key;  // section.name
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;
};

std::vector<Field> Fields(ExperimentConfig& c) {
  std::vector<Field> f;
  auto add = [&](std::string key, std::function<std::string()> get,
                 std::function<void(const std::string&)> set) {
    f.push_back({std::move(key), std::move(get), std::move(set)});
  };
  auto int_field = [&](std::string key, int& ref) {
    add(key, [&ref] { return std::to_string(ref); },
        [&ref, key](const std::string& v) { ref = ParseInt(key, v); });
  };
  auto double_field = [&](std::string key, double& ref) {
    add(key, [&ref] { return Fmt(ref); },
        [&ref, key](const std::string& v) { ref = ParseDouble(key, v); });
  };
  auto bool_field = [&](std::string key, bool& ref) {
    add(key, [&ref] { return ref ? std::string("true") : std::string("false"); },
        [&ref, key](const std::string& v) { ref = ParseBool(key, v); });
  };
  auto path_field = [&](std::string key, std::filesystem::path& ref) {
    add(key, [&ref] { return ref.string(); },
        [&ref](const std::string& v) { ref = Trim(v); });
  };

  add("run.preset", [&c] { return c.preset; },
      [&c](const std::string& v) { c.preset = Trim(v); });
  add("run.seed", [&c] { return std::to_string(c.seed); },
      [&c](const std::string& v) { c.seed = ParseU64("run.seed", v); });
  int_field("run.workers", c.workers);
  path_field("run.out", c.out);

  int_field("dataset.n_member", c.shapes.n_member);
  int_field("dataset.n_holdout", c.shapes.n_holdout);
  int_field("dataset.size", c.shapes.size);
  int_field("dataset.classes", c.shapes.k_classes);
  int_field("dataset.templates", c.shapes.n_templates);
  double_field("dataset.jitter", c.shapes.jitter);
  path_field("dataset.dir", c.dataset_dir);

  int_field("schedule.t_max", c.t_max);
  double_field("schedule.beta_start", c.beta_start);
  double_field("schedule.beta_end", c.beta_end);

  add("model.backend",
      [&c] { return std::string(c.backend == Backend::kOracle ? "oracle" : "trained"); },
      [&c](const std::string& raw) {
        const std::string v = Trim(raw);
        if (v == "oracle") {
          c.backend = Backend::kOracle;
        } else if (v == "trained") {
          c.backend = Backend::kTrained;
        } else {
          Bad("model.backend", raw, "oracle or trained");
        }
      });
  path_field("model.path", c.model_path);
  int_field("model.c1", c.arch.c1);
  int_field("model.c2", c.arch.c2);
  int_field("model.c3", c.arch.c3);

  int_field("train.epochs", c.train.epochs);
  double_field("train.lr", c.train.lr);
  double_field("train.momentum", c.train.momentum);
  int_field("train.batch", c.train.batch);
  int_field("train.t_max_train", c.train.t_max_train);
  double_field("train.label_dropout", c.train.label_dropout);

  add("attack.attacks",
      [&c] { return Join(c.attacks, [](AttackKind k) { return std::string(AttackName(k)); }); },
      [&c](const std::string& v) {
        c.attacks.clear();
        for (const auto& name : SplitList(v)) c.attacks.push_back(ParseAttack(name));
      });
  int_field("attack.t_total", c.attack.t_total);
  int_field("attack.interval", c.attack.interval);
  double_field("attack.gamma", c.attack.gamma);
  int_field("attack.t_eval", c.attack.t_eval);
  int_field("attack.naive_draws", c.attack.naive_draws);
  bool_field("attack.class_conditional", c.class_conditional);
  add("attack.tau",
      [&c] { return c.attack.tau ? Fmt(*c.attack.tau) : std::string("none"); },
      [&c](const std::string& v) {
        if (Trim(v) == "none" || Trim(v).empty()) {
          c.attack.tau.reset();
        } else {
          c.attack.tau = ParseDouble("attack.tau", v);
        }
      });

  add("distortion.kinds",
      [&c] {
        return Join(c.distortions,
                    [](DistortionKind k) { return std::string(DistortionName(k)); });
      },
      [&c](const std::string& v) {
        c.distortions.clear();
        for (const auto& name : SplitList(v)) {
          c.distortions.push_back(ParseDistortion(name));
        }
      });
  double_field("distortion.salt_pepper_fraction", c.salt_pepper_fraction);
  double_field("distortion.rotation_degrees", c.rotation_degrees);
  double_field("distortion.saturation_delta", c.saturation_delta);
  double_field("distortion.brightness_delta", c.brightness_delta);
  bool_field("distortion.dump", c.dump_distorted);

  int_field("curves.t_last", c.curve_t_last);
  int_field("curves.step", c.curve_step);
  int_field("curves.dt", c.curve_dt);

  add("ablation.timesteps",
      [&c] { return Join(c.timestep_grid, [](int v) { return std::to_string(v); }); },
      [&c](const std::string& v) {
        c.timestep_grid.clear();
        for (const auto& s : SplitList(v)) {
          c.timestep_grid.push_back(ParseInt("ablation.timesteps", s));
        }
      });
  add("ablation.intervals",
      [&c] { return Join(c.interval_grid, [](int v) { return std::to_string(v); }); },
      [&c](const std::string& v) {
        c.interval_grid.clear();
        for (const auto& s : SplitList(v)) {
          c.interval_grid.push_back(ParseInt("ablation.intervals", s));
        }
      });
  int_field("ablation.interval_t_total", c.interval_ablation_t_total);
  add("ablation.guidance",
      [&c] { return Join(c.guidance_grid, [](double v) { return Fmt(v); }); },
      [&c](const std::string& v) {
        c.guidance_grid.clear();
        for (const auto& s : SplitList(v)) {
          c.guidance_grid.push_back(ParseDouble("ablation.guidance", s));
        }
      });

  bool_field("output.dump_trajectories", c.dump_trajectories);
  return f;
}

}  // namespace

ShapesSpec ExperimentConfig::DatasetSpec() const {
  ShapesSpec s = shapes;
  s.seed = seed;
  return s;
}

Schedule ExperimentConfig::MakeSchedule() const {
  return Schedule::Linear(t_max, beta_start, beta_end);
}

AttackConfig ExperimentConfig::Attack() const {
  AttackConfig a = attack;
  a.noise_seed = seed;
  return a;
}

TrainConfig ExperimentConfig::Training() const {
  TrainConfig t = train;
  t.seed = seed;
  return t;
}

DistortionSpec ExperimentConfig::Distortion(DistortionKind kind) const {
  switch (kind) {
    case DistortionKind::kNone: return {kind, 0.0, seed};
    case DistortionKind::kSaltPepper: return {kind, salt_pepper_fraction, seed};
    case DistortionKind::kRotation: return {kind, rotation_degrees, seed};
    case DistortionKind::kSaturation: return {kind, saturation_delta, seed};
    case DistortionKind::kBrightness: return {kind, brightness_delta, seed};
  }
  return {kind, 0.0, seed};
}

std::filesystem::path ExperimentConfig::ModelPath() const {
  return model_path.empty() ? out / "model.bin" : model_path;
}

void ExperimentConfig::Validate() const {
  if (workers < 1) throw ParameterError("run.workers must be >= 1");
  if (dataset_dir.empty()) structmia::Validate(DatasetSpec());
  const Schedule schedule = MakeSchedule();
  Attack().Validate(schedule);
  if (attacks.empty()) throw ParameterError("attack.attacks is empty");
  for (DistortionKind k : distortions) Distortion(k).Validate();
  if (curve_step < 1 || curve_dt < 1 || curve_t_last < 0 ||
      curve_t_last + curve_dt > t_max) {
    throw ParameterError("curves need step, dt >= 1 and t_last + dt <= t_max");
  }
  for (int t : timestep_grid) {
    CheckStepGrid(t, attack.interval, schedule);
  }
  for (int i : interval_grid) {
    CheckStepGrid(interval_ablation_t_total, i, schedule);
  }
  for (double g : guidance_grid) {
    if (!std::isfinite(g)) throw ParameterError("guidance values must be finite");
  }
  if (backend == Backend::kTrained) {
    Training().Validate(schedule);
  }
}

ExperimentConfig Preset(const std::string& name) {
  ExperimentConfig c;
  if (name == "paper-default") return c;
  if (name == "smoke") {
    // A few seconds end to end; for wiring checks, not for conclusions.
    c.preset = name;
    c.shapes.n_member = 16;
    c.shapes.n_holdout = 16;
    c.shapes.n_templates = 8;
    c.arch.c1 = 8;
    c.arch.c2 = 16;
    c.arch.c3 = 16;
    c.train.epochs = 2;
    c.timestep_grid = {50, 100, 200};
    c.curve_t_last = 200;
    return c;
  }
  throw ParameterError("unknown preset '" + name +
                       "' (known: paper-default, smoke)");
}

void SetConfigValue(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
  for (Field& f : Fields(cfg)) {
    if (f.key == dotted_key) {
      f.set(value);
      return;
    }
  }
  throw ParameterError("unknown config key '" + dotted_key + "'");
}

ExperimentConfig LoadConfig(const std::filesystem::path& path,
                            const ExperimentConfig& base) {
  if (!std::filesystem::exists(path)) {
    throw MissingArtifactError("config file not found: " + path.string());
  }
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParameterError("cannot parse config " + path.string() + ": " +
                         e.what());
  }
  ExperimentConfig cfg = base;
  if (auto preset = tree.get_optional<std::string>("run.preset")) {
    cfg = Preset(Trim(*preset));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ParameterError("config key '" + section + "' outside a section");
    }
    for (const auto& [key, value] : body) {
      SetConfigValue(cfg, section + "." + key, value.data());
    }
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> Serialize(
    const ExperimentConfig& cfg) {
  ExperimentConfig copy = cfg;
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : Fields(copy)) out.emplace_back(f.key, f.get());
  return out;
}

std::string ConfigHash(const ExperimentConfig& cfg) {
  Sha256 h;
  for (const auto& [k, v] : Serialize(cfg)) {
    if (k == "run.workers" || k == "run.out") continue;
    h.Update(k);
    h.Update("=");
    h.Update(v);
    h.Update("\n");
  }
  return h.HexDigest().substr(0, 16);
}

std::string ToIni(const ExperimentConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& [k, v] : Serialize(cfg)) {
    const auto dot = k.find('.');
    const std::string s = k.substr(0, dot);
    if (s != section) {
      out += (section.empty() ? "[" : "\n[") + s + "]\n";
      section = s;
    }
    out += k.substr(dot + 1) + " = " + v + "\n";
  }
  return out;
}

}  // namespace structmia
