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

#include "structmia/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "structmia/error.h"

namespace structmia {

std::string_view ToolkitVersion() { return STRUCTMIA_VERSION; }

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string Preamble(const ExperimentConfig& cfg, std::string_view command,
                     const Metadata& metadata) {
  std::string out;
  out += "# structmia " + std::string(ToolkitVersion()) + "\n";
  out += "# command " + std::string(command) + "\n";
  out += "# config_hash " + ConfigHash(cfg) + "\n";
  for (const auto& [k, v] : Serialize(cfg)) {
    if (k == "run.workers" || k == "run.out") continue;
    out += "# config " + k + "=" + v + "\n";
  }
  // Measurement conventions that are fixed in code rather than configured.
  out += "# convention ssim=gaussian11_sigma1.5_k0.01_0.03_valid_rgb_mean\n";
  out += "# convention codec=identity\n";
  out += "# convention pia_norm=l1\n";
  out += "# convention rotation_fill=black\n";
  out += "# convention distorted_splits=member,holdout\n";
  out += "# convention precision_recall_at=asr_tau\n";
  out += "# convention tie_rule=score_equal_tau_is_nonmember\n";
  for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string RecordsCsv(const std::vector<AttackRecord>& records) {
  std::string out = "id,split,attack,score\n";
  for (const AttackRecord& r : records) {
    out += std::to_string(r.id) + "," + std::string(SplitName(r.split)) + "," +
           std::string(AttackName(r.attack)) + "," + FormatNumber(r.score) +
           "\n";
  }
  return out;
}

std::string SummaryCsv(const std::vector<SummaryRow>& rows) {
  std::string out;
  if (rows.empty()) return out;
  for (const auto& [k, v] : rows.front().keys) out += k + ",";
  out += "auc,asr,asr_tau,precision,recall,tpr_at_1pct,tpr_at_0p1pct\n";
  for (const SummaryRow& row : rows) {
    if (row.keys.size() != rows.front().keys.size()) {
      throw ParameterError("summary rows disagree on their key columns");
    }
    for (const auto& [k, v] : row.keys) out += v + ",";
    const RocSummary& r = row.roc;
    out += FormatNumber(r.auc) + "," + FormatNumber(r.asr) + "," +
           FormatNumber(r.asr_tau) + "," + FormatNumber(r.precision) + "," +
           FormatNumber(r.recall) + "," + FormatNumber(r.tpr_at_1pct) + "," +
           FormatNumber(r.tpr_at_0p1pct) + "\n";
  }
  return out;
}

std::string RocCsv(const std::vector<RocPoint>& curve) {
  std::string out = "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve) {
    out += FormatNumber(p.threshold) + "," + FormatNumber(p.fpr) + "," +
           FormatNumber(p.tpr) + "\n";
  }
  return out;
}

std::string CurveCsv(const std::vector<CurvePoint>& curve) {
  std::string out = "t,value\n";
  for (const CurvePoint& p : curve) {
    out += std::to_string(p.t) + "," + FormatNumber(p.value) + "\n";
  }
  return out;
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() +
                    ": " + ec.message());
    }
  }
  std::ofstream os(path, std::ios::binary);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw IoError("cannot write " + path.string());
}

}  // namespace structmia
