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

#include "sxseval/reports.h"

#include <cmath>
#include <cstdio>

#include "sxseval/digest.h"

namespace sxseval {
namespace fs = std::filesystem;
using nlohmann::json;

std::optional<ReportFormat> ParseReportFormat(std::string_view s) {
  if (s == "tsv") return ReportFormat::kTsv;
  if (s == "json") return ReportFormat::kJson;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string_view Extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kTsv:
      return "tsv";
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kMarkdown:
      return "md";
  }
  return "txt";
}

std::string FormatNumber(double value, int digits) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  std::string out = buf;
  // Avoid "-0.0000" for values that round to zero.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string ConfigHash(const json& config) { return Sha256Hex(config.dump()); }

std::map<std::string, std::string> InputDigests(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const char* name : {"project.json", "units.tsv", "mqm.tsv", "sxs_mqm.tsv", "rr.tsv"}) {
    const fs::path p = root / name;
    if (fs::exists(p)) out[name] = Sha256Hex(ReadFile(p));
  }
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> Stamp(const ReportHeader& h) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"tool_version", std::string(kToolVersion)},
      {"command", h.command},
      {"config_hash", h.config_hash},
      {"seed", std::to_string(h.seed)},
      {"trials", std::to_string(h.trials)},
  };
  for (const auto& [file, digest] : h.input_digests) out.emplace_back("input:" + file, digest);
  return out;
}

std::string Join(const std::vector<std::string>& cells, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

std::string MarkdownCell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string Render(const Report& report, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::kTsv:
      for (const auto& [k, v] : Stamp(report.header)) out += "# " + k + "\t" + v + "\n";
      for (const Table& t : report.tables) {
        out += "\n# table\t" + t.name + "\n" + Join(t.columns, "\t") + "\n";
        for (const auto& row : t.rows) out += Join(row, "\t") + "\n";
      }
      return out;
    case ReportFormat::kJson: {
      json header = json::object();
      for (const auto& [k, v] : Stamp(report.header)) header[k] = v;
      json tables = json::array();
      for (const Table& t : report.tables) {
        tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
      }
      return json{{"header", header}, {"tables", tables}}.dump(2) + "\n";
    }
    case ReportFormat::kMarkdown:
      out += "# " + report.header.command + "\n\n";
      for (const auto& [k, v] : Stamp(report.header)) out += "- " + k + ": `" + v + "`\n";
      for (const Table& t : report.tables) {
        out += "\n## " + t.name + "\n\n";
        std::vector<std::string> cols;
        for (const std::string& c : t.columns) cols.push_back(MarkdownCell(c));
        out += "| " + Join(cols, " | ") + " |\n|";
        for (size_t i = 0; i < t.columns.size(); ++i) out += "---|";
        out += "\n";
        for (const auto& row : t.rows) {
          std::vector<std::string> cells;
          for (const std::string& c : row) cells.push_back(MarkdownCell(c));
          out += "| " + Join(cells, " | ") + " |\n";
        }
      }
      return out;
  }
  return out;
}

}  // namespace sxseval
