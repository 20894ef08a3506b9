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

// Result file formatting. Every data file starts with '#' comment lines
// carrying the toolkit version, the config hash, the full configuration and
// command metadata; nothing time- or host-dependent is written, so reruns
// are byte-identical.

#ifndef STRUCTMIA_REPORT_H_
#define STRUCTMIA_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structmia/analysis.h"
#include "structmia/attacks.h"
#include "structmia/config.h"
#include "structmia/metrics.h"

namespace structmia {

using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string_view ToolkitVersion();

// 9 significant digits; infinities as inf / -inf.
std::string FormatNumber(double v);

std::string Preamble(const ExperimentConfig& cfg, std::string_view command,
                     const Metadata& metadata = {});

// id,split,attack,score
std::string RecordsCsv(const std::vector<AttackRecord>& records);

// One summary row: leading key columns (same keys in every row of a file)
// followed by the RocSummary fields.
struct SummaryRow {
  Metadata keys;
  RocSummary roc;
};
std::string SummaryCsv(const std::vector<SummaryRow>& rows);

// threshold,fpr,tpr
std::string RocCsv(const std::vector<RocPoint>& curve);

// t,value
std::string CurveCsv(const std::vector<CurvePoint>& curve);

// Creates parent directories; throws IoError on failure.
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace structmia

#endif  // STRUCTMIA_REPORT_H_
