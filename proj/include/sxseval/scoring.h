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

#ifndef SXSEVAL_SCORING_H_
#define SXSEVAL_SCORING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sxseval/model.h"

namespace sxseval {

// Penalty points per error. Scores are accumulated in integer tenths of a
// point so that equal error multisets give bit-identical totals.
int64_t ErrorWeightTenths(const ErrorCategory& category, Severity severity);
double ErrorWeight(const ErrorCategory& category, Severity severity);

// Sum over target-side errors (source issues weigh 0).
int64_t MqmSegmentScoreTenths(const MqmAnnotation& annotation);
double MqmSegmentScore(const MqmAnnotation& annotation);

// (penalty for system_a, penalty for system_b).
std::pair<int, int> RrPenalties(RrValue value);

// One annotator's score for one system on one segment. In the side-by-side
// settings `partner` names the other system on screen; it is empty for MQM.
struct ScoreCell {
  std::string system;
  SegmentRef segment;
  std::string annotator;
  Setting setting = Setting::kMqm;
  std::string partner;
  double raw = 0;
  std::optional<double> z;

  bool operator==(const ScoreCell&) const = default;
};

enum class ZGrouping {
  kPerSetting,         // group = (annotator, setting)
  kPooledMqmSettings,  // group = annotator, over MQM and SXS_MQM together
};

// Fills z for MQM-setting cells; RR cells are left without z. Population
// standard deviation; a zero-variance group gets z = 0. Throws
// E_EMPTY_GROUP on empty input.
void ZNormalize(std::vector<ScoreCell>& cells, ZGrouping grouping = ZGrouping::kPerSetting);

// Raw cells of one setting, in canonical order.
std::vector<ScoreCell> ComputeCells(const Project& project, Setting setting);

struct ScoreOptions {
  bool use_z = false;
  ZGrouping grouping = ZGrouping::kPerSetting;
  // Restricts side-by-side cells to this pair (both systems on screen) and
  // MQM cells to its two systems. z is still computed over the full group.
  std::optional<SystemPair> pair;
};

struct ScoreTable {
  Setting setting = Setting::kMqm;
  bool use_z = false;
  std::vector<ScoreCell> cells;
  std::map<std::pair<std::string, SegmentRef>, double> segment_scores;
  std::map<std::string, double> system_scores;

  std::optional<double> SegmentScore(const std::string& system, const SegmentRef& seg) const;
  std::set<SegmentRef> SegmentsOf(const std::string& system) const;
};

// Throws E_NO_ANNOTATIONS when the setting has no cells after filtering.
ScoreTable BuildScoreTable(const Project& project, Setting setting,
                           const ScoreOptions& options = {});

enum class ExclusionMode {
  // Drop the annotators' work; drop segments that no longer have any
  // annotator in a setting where they previously had one.
  kDropEmptySegments,
  // Drop every segment the excluded annotators touched.
  kDropTheirSegments,
};

Project ExcludeAnnotators(const Project& project, const std::set<std::string>& ids,
                          ExclusionMode mode = ExclusionMode::kDropEmptySegments);

}  // namespace sxseval

#endif  // SXSEVAL_SCORING_H_
