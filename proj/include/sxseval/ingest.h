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

#ifndef SXSEVAL_INGEST_H_
#define SXSEVAL_INGEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sxseval/model.h"

// Readers and writers for the WMT-style MQM TSV layout and its side-by-side
// and relative-ranking extensions. Columns are located by header name
// (case-insensitive); unknown extra columns are ignored.
namespace sxseval {

inline constexpr std::string_view kSpanOpen = "<v>";
inline constexpr std::string_view kSpanClose = "</v>";

struct ExtractedSpan {
  std::string clean;
  std::optional<std::pair<size_t, size_t>> span;  // scalar offsets into clean

  bool operator==(const ExtractedSpan&) const = default;
};

// Throws E_MARKER_UNBALANCED or E_MARKER_MULTIPLE.
ExtractedSpan ExtractSpan(std::string_view marked);

// Inverse of ExtractSpan.
std::string InsertMarkers(std::string_view clean, size_t start, size_t end);

struct MqmTsvData {
  std::vector<MqmAnnotation> annotations;  // canonical order
  std::vector<TranslationUnit> units;      // sorted by (segment, system)
};

// `setting` is kMqm or kSxsMqm; the latter requires a pair_partner column.
// Errors carry "row N" (1-based line number) in their detail.
MqmTsvData ParseMqmTsv(std::string_view bytes, Setting setting);

// Writes annotations of `setting` only. Rows are ordered by
// (doc_id, seg_id, system, rater[, pair_partner]) then by error order.
std::string WriteMqmTsv(const std::vector<MqmAnnotation>& annotations,
                        const std::vector<TranslationUnit>& units, Setting setting);

std::vector<RrJudgment> ParseRrTsv(std::string_view bytes);
std::string WriteRrTsv(const std::vector<RrJudgment>& judgments);

// Columns: system, doc_id, seg_id, source, target.
std::vector<TranslationUnit> ParseUnitsTsv(std::string_view bytes);
std::string WriteUnitsTsv(const std::vector<TranslationUnit>& units);

struct MetricScore {
  std::string system;
  SegmentRef segment;
  double score = 0;
};

// External quality-metric scores, columns: system, doc_id, seg_id, score.
std::vector<MetricScore> ParseMetricScoresTsv(std::string_view bytes);

}  // namespace sxseval

#endif  // SXSEVAL_INGEST_H_
