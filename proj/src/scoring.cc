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

#include "sxseval/scoring.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sxseval/error.h"

namespace sxseval {
namespace {

bool CellLess(const ScoreCell& a, const ScoreCell& b) {
  return std::tie(a.segment, a.system, a.annotator, a.setting, a.partner) <
         std::tie(b.segment, b.system, b.annotator, b.setting, b.partner);
}

void NormalizeGroup(std::vector<ScoreCell*>& group) {
  const double n = static_cast<double>(group.size());
  double mean = 0;
  for (const ScoreCell* c : group) mean += c->raw;
  mean /= n;
  double var = 0;
  for (const ScoreCell* c : group) var += (c->raw - mean) * (c->raw - mean);
  const double sd = std::sqrt(var / n);
  for (ScoreCell* c : group) c->z = sd > 0 ? (c->raw - mean) / sd : 0.0;
}

bool InPair(const ScoreCell& cell, const SystemPair& pair) {
  if (cell.setting == Setting::kMqm) return pair.Contains(cell.system);
  return pair.SameSystems(cell.system, cell.partner);
}

}  // namespace

int64_t ErrorWeightTenths(const ErrorCategory& category, Severity severity) {
  if (category.category == Category::kSourceIssue) return 0;
  if (severity == Severity::kMajor) {
    return category.category == Category::kNonTranslation ? 250 : 50;
  }
  if (category.category == Category::kFluency &&
      category.subcategory == Subcategory::kPunctuation) {
    return 1;
  }
  return 10;
}

double ErrorWeight(const ErrorCategory& category, Severity severity) {
  return static_cast<double>(ErrorWeightTenths(category, severity)) / 10.0;
}

int64_t MqmSegmentScoreTenths(const MqmAnnotation& annotation) {
  int64_t total = 0;
  for (const ErrorSpan& e : annotation.errors) {
    if (e.side == Side::kTarget) total += ErrorWeightTenths(e.category, e.severity);
  }
  return total;
}

double MqmSegmentScore(const MqmAnnotation& annotation) {
  return static_cast<double>(MqmSegmentScoreTenths(annotation)) / 10.0;
}

std::pair<int, int> RrPenalties(RrValue value) {
  switch (value) {
    case RrValue::kAMuchBetter: return {0, 2};
    case RrValue::kABetter: return {0, 1};
    case RrValue::kSame: return {0, 0};
    case RrValue::kBBetter: return {1, 0};
    case RrValue::kBMuchBetter: return {2, 0};
  }
  return {0, 0};
}

void ZNormalize(std::vector<ScoreCell>& cells, ZGrouping grouping) {
  if (cells.empty()) throw Error("E_EMPTY_GROUP", "no score cells to normalize");
  std::map<std::pair<std::string, int>, std::vector<ScoreCell*>> groups;
  for (ScoreCell& c : cells) {
    if (c.setting == Setting::kSxsRr) {
      c.z.reset();
      continue;
    }
    const int key = grouping == ZGrouping::kPooledMqmSettings ? 0 : static_cast<int>(c.setting);
    groups[{c.annotator, key}].push_back(&c);
  }
  for (auto& [key, group] : groups) NormalizeGroup(group);
}

std::vector<ScoreCell> ComputeCells(const Project& project, Setting setting) {
  std::vector<ScoreCell> cells;
  if (setting == Setting::kSxsRr) {
    for (const RrJudgment& j : project.rr) {
      const auto [pa, pb] = RrPenalties(j.value);
      cells.push_back({j.system_a, j.segment, j.annotator, setting, j.system_b,
                       static_cast<double>(pa), std::nullopt});
      cells.push_back({j.system_b, j.segment, j.annotator, setting, j.system_a,
                       static_cast<double>(pb), std::nullopt});
    }
  } else {
    for (const MqmAnnotation& a : project.mqm) {
      if (a.setting != setting) continue;
      cells.push_back({a.system, a.segment, a.annotator, setting,
                       setting == Setting::kMqm ? std::string() : a.pair_partner.value_or(""),
                       MqmSegmentScore(a), std::nullopt});
    }
  }
  std::sort(cells.begin(), cells.end(), CellLess);
  return cells;
}

std::optional<double> ScoreTable::SegmentScore(const std::string& system,
                                               const SegmentRef& seg) const {
  auto it = segment_scores.find({system, seg});
  if (it == segment_scores.end()) return std::nullopt;
  return it->second;
}

std::set<SegmentRef> ScoreTable::SegmentsOf(const std::string& system) const {
  std::set<SegmentRef> out;
  for (const auto& [key, score] : segment_scores) {
    if (key.first == system) out.insert(key.second);
  }
  return out;
}

ScoreTable BuildScoreTable(const Project& project, Setting setting,
                           const ScoreOptions& options) {
  const bool use_z = options.use_z && setting != Setting::kSxsRr;
  std::vector<ScoreCell> cells = ComputeCells(project, setting);
  if (use_z && !cells.empty()) {
    if (options.grouping == ZGrouping::kPooledMqmSettings) {
      const Setting other = setting == Setting::kMqm ? Setting::kSxsMqm : Setting::kMqm;
      std::vector<ScoreCell> other_cells = ComputeCells(project, other);
      const size_t n = cells.size();
      cells.insert(cells.end(), other_cells.begin(), other_cells.end());
      ZNormalize(cells, options.grouping);
      cells.resize(n);
    } else {
      ZNormalize(cells, options.grouping);
    }
  }
  if (options.pair) {
    std::erase_if(cells, [&](const ScoreCell& c) { return !InPair(c, *options.pair); });
  }
  if (cells.empty()) {
    throw Error("E_NO_ANNOTATIONS", "no annotations in setting", std::string(Name(setting)));
  }

  ScoreTable table;
  table.setting = setting;
  table.use_z = use_z;
  // Raw scores are sums of tenths, so raw means are formed from exact
  // integer totals; equal totals give bit-identical means.
  struct Acc {
    double z_sum = 0;
    int64_t tenths = 0;
    int count = 0;
  };
  std::map<std::pair<std::string, SegmentRef>, Acc> sums;
  for (const ScoreCell& c : cells) {
    Acc& acc = sums[{c.system, c.segment}];
    if (use_z) {
      acc.z_sum += *c.z;
    } else {
      acc.tenths += std::llround(c.raw * 10);
    }
    ++acc.count;
  }
  std::map<std::string, std::pair<double, int>> system_sums;
  for (const auto& [key, acc] : sums) {
    const double mean = use_z ? acc.z_sum / acc.count
                              : static_cast<double>(acc.tenths) / 10.0 / acc.count;
    table.segment_scores.emplace(key, mean);
    auto& [sum, count] = system_sums[key.first];
    sum += mean;
    ++count;
  }
  for (const auto& [system, acc] : system_sums) {
    table.system_scores.emplace(system, acc.first / acc.second);
  }
  table.cells = std::move(cells);
  return table;
}

Project ExcludeAnnotators(const Project& project, const std::set<std::string>& ids,
                          ExclusionMode mode) {
  if (ids.empty()) return project;
  std::set<SegmentRef> drop;
  if (mode == ExclusionMode::kDropTheirSegments) {
    for (const MqmAnnotation& a : project.mqm) {
      if (ids.contains(a.annotator)) drop.insert(a.segment);
    }
    for (const RrJudgment& j : project.rr) {
      if (ids.contains(j.annotator)) drop.insert(j.segment);
    }
  } else {
    std::map<std::pair<Setting, SegmentRef>, std::pair<int, int>> counts;  // before, after
    for (const MqmAnnotation& a : project.mqm) {
      auto& [before, after] = counts[{a.setting, a.segment}];
      ++before;
      if (!ids.contains(a.annotator)) ++after;
    }
    for (const RrJudgment& j : project.rr) {
      auto& [before, after] = counts[{Setting::kSxsRr, j.segment}];
      ++before;
      if (!ids.contains(j.annotator)) ++after;
    }
    for (const auto& [key, c] : counts) {
      if (c.first > 0 && c.second == 0) drop.insert(key.second);
    }
  }

  Project out;
  out.language_pair = project.language_pair;
  out.systems = project.systems;
  out.designated_pairs = project.designated_pairs;
  for (const std::string& a : project.annotators) {
    if (!ids.contains(a)) out.annotators.insert(a);
  }
  for (const Document& d : project.documents) {
    Document kept{d.doc_id, {}};
    for (const std::string& s : d.seg_ids) {
      if (!drop.contains(SegmentRef{d.doc_id, s})) kept.seg_ids.push_back(s);
    }
    if (!kept.seg_ids.empty()) out.documents.push_back(std::move(kept));
  }
  for (const TranslationUnit& u : project.units) {
    if (!drop.contains(u.segment)) out.units.push_back(u);
  }
  for (const MqmAnnotation& a : project.mqm) {
    if (!ids.contains(a.annotator) && !drop.contains(a.segment)) out.mqm.push_back(a);
  }
  for (const RrJudgment& j : project.rr) {
    if (!ids.contains(j.annotator) && !drop.contains(j.segment)) out.rr.push_back(j);
  }
  return out;
}

}  // namespace sxseval
