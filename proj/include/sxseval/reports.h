// Copyright 2026 The sxseval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SXSEVAL_REPORTS_H_
#define SXSEVAL_REPORTS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sxseval {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Reproducibility stamp carried by every report.
struct ReportHeader {
  std::string command;
  std::string config_hash;
  uint64_t seed = 0;
  int64_t trials = 0;
  std::map<std::string, std::string> input_digests;  // file name -> sha256
};

struct Report {
  ReportHeader header;
  std::vector<Table> tables;
};

enum class ReportFormat { kTsv, kJson, kMarkdown };

std::optional<ReportFormat> ParseReportFormat(std::string_view s);
std::string_view Extension(ReportFormat format);  // "tsv", "json", "md"

std::string Render(const Report& report, ReportFormat format);

// Fixed-point with `digits` decimals; "NA" for NaN, "inf"/"-inf" otherwise.
std::string FormatNumber(double value, int digits = 4);

// SHA-256 of the canonical (sorted-key, compact) dump.
std::string ConfigHash(const nlohmann::json& config);

// Digests of project.json and the store's TSV files that exist.
std::map<std::string, std::string> InputDigests(const std::filesystem::path& project_root);

}  // namespace sxseval

#endif  // SXSEVAL_REPORTS_H_
