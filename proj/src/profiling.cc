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

#include "sxseval/profiling.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "sxseval/error.h"
#include "sxseval/scoring.h"

namespace sxseval {
namespace {

bool Matchable(const ErrorSpan& e) { return e.side == Side::kTarget && !e.unspecified_span; }

size_t Overlap(const ErrorSpan& a, const ErrorSpan& b) {
  const size_t lo = std::max(a.start, b.start);
  const size_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

}  // namespace

ErrorDistribution ComputeErrorDistribution(const Project& project, Setting setting,
                                           const DistributionOptions& options) {
  if (setting == Setting::kSxsRr) {
    throw Error("E_SETTING", "error distributions need error annotations");
  }
  std::map<std::string, int64_t> multiplier;
  if (options.duplicate_rule && setting == Setting::kMqm) {
    for (const SystemPair& p : project.designated_pairs) {
      ++multiplier[p.first];
      ++multiplier[p.second];
    }
  }
  ErrorDistribution d;
  d.setting = setting;
  for (const MqmAnnotation& a : project.mqm) {
    if (a.setting != setting) continue;
    auto it = multiplier.find(a.system);
    const int64_t times = it == multiplier.end() ? 1 : std::max<int64_t>(1, it->second);
    for (const ErrorSpan& e : a.errors) {
      if (e.side != Side::kTarget) continue;
      ErrorCategory c = e.category;
      if (!options.subcategories) c.subcategory.reset();
      d.counts[{c, e.severity}] += times;
      d.total += times;
    }
  }
  d.percentages_defined = d.total > 0;
  if (d.percentages_defined) {
    for (const auto& [key, n] : d.counts) {
      d.percentages[key] = static_cast<double>(n) / static_cast<double>(d.total);
    }
  }
  return d;
}

std::vector<std::pair<size_t, size_t>> MatchSpans(const std::vector<ErrorSpan>& first,
                                                  const std::vector<ErrorSpan>& second,
                                                  const MatchOptions& options) {
  struct Candidate {
    size_t overlap;
    size_t i;
    size_t j;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < first.size(); ++i) {
    if (!Matchable(first[i])) continue;
    for (size_t j = 0; j < second.size(); ++j) {
      if (!Matchable(second[j])) continue;
      const size_t overlap = Overlap(first[i], second[j]);
      if (overlap == 0) continue;
      if (options.exact &&
          (first[i].start != second[j].start || first[i].end != second[j].end)) {
        continue;
      }
      candidates.push_back({overlap, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.overlap != y.overlap) return x.overlap > y.overlap;
    return std::tie(first[x.i].start, second[x.j].start, x.i, x.j) <
           std::tie(first[y.i].start, second[y.j].start, y.i, y.j);
  });
  std::vector<bool> used_i(first.size());
  std::vector<bool> used_j(second.size());
  std::vector<std::pair<size_t, size_t>> out;
  for (const Candidate& c : candidates) {
    if (used_i[c.i] || used_j[c.j]) continue;
    used_i[c.i] = used_j[c.j] = true;
    out.emplace_back(c.i, c.j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ErrorMatch> MatchErrorsAcrossSettings(const Project& project,
                                                  const std::string& annotator,
                                                  const std::string& system,
                                                  const MatchOptions& options) {
  const ProjectIndex index(project);
  std::vector<ErrorMatch> out;
  for (const SegmentRef& seg : index.segments()) {
    const MqmAnnotation* mqm = index.Annotation(Setting::kMqm, annotator, system, seg);
    if (mqm == nullptr) continue;
    for (const MqmAnnotation* sxs : index.Annotations(Setting::kSxsMqm, annotator, system, seg)) {
      for (const auto& [i, j] : MatchSpans(mqm->errors, sxs->errors, options)) {
        out.push_back({seg, sxs->pair_partner.value_or(""), mqm->errors[i], sxs->errors[j]});
      }
    }
  }
  return out;
}

ConversionMatrix BuildConversionMatrix(const Project& project, const MatchOptions& options) {
  std::set<std::pair<std::string, std::string>> keys;  // (annotator, system)
  for (const MqmAnnotation& a : project.mqm) {
    if (a.setting == Setting::kMqm) keys.emplace(a.annotator, a.system);
  }
  ConversionMatrix m;
  for (const auto& [annotator, system] : keys) {
    for (const ErrorMatch& match : MatchErrorsAcrossSettings(project, annotator, system, options)) {
      ++m.cells[{match.mqm.category.category, match.sxs.category.category}];
      ++m.total;
    }
  }
  if (m.total == 0) throw Error("E_NO_MATCHES", "no error matched across settings");
  return m;
}

std::vector<AnnotatorStats> OutlierStats(
    const std::vector<std::pair<std::string, int64_t>>& counts, Setting setting,
    double threshold) {
  if (counts.size() < 2) {
    throw Error("E_TOO_FEW", "outlier detection needs at least two annotators",
                std::to_string(counts.size()) + " in " + std::string(Name(setting)));
  }
  const double n = static_cast<double>(counts.size());
  double mean = 0;
  for (const auto& [who, c] : counts) mean += static_cast<double>(c);
  mean /= n;
  double var = 0;
  for (const auto& [who, c] : counts) {
    var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  }
  const double sd = std::sqrt(var / n);
  std::vector<AnnotatorStats> out;
  for (const auto& [who, c] : counts) {
    const double z = sd > 0 ? (static_cast<double>(c) - mean) / sd : 0.0;
    out.push_back({who, setting, c, z, z > threshold});
  }
  return out;
}

std::vector<AnnotatorStats> AnnotatorOutliers(const Project& project, Setting setting,
                                              double threshold) {
  if (setting == Setting::kSxsRr) {
    throw Error("E_SETTING", "outlier detection counts error annotations");
  }
  std::map<std::string, int64_t> counts;
  for (const MqmAnnotation& a : project.mqm) {
    if (a.setting != setting) continue;
    int64_t& c = counts[a.annotator];
    for (const ErrorSpan& e : a.errors) {
      if (e.side == Side::kTarget) ++c;
    }
  }
  return OutlierStats({counts.begin(), counts.end()}, setting, threshold);
}

double Quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error("E_EMPTY", "quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<ScoreSummary> ScoreDistributionExport(const Project& project, Setting setting) {
  std::map<std::string, std::vector<double>> by_annotator;
  for (const ScoreCell& c : ComputeCells(project, setting)) {
    by_annotator[c.annotator].push_back(c.raw);
  }
  std::vector<ScoreSummary> out;
  int label = 0;
  for (auto& [annotator, scores] : by_annotator) {
    ScoreSummary s;
    s.label = "A" + std::to_string(++label);
    s.annotator = annotator;
    s.scores = std::move(scores);
    std::vector<double> sorted = s.scores;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0;
    for (double x : sorted) sum += x;
    s.mean = sum / static_cast<double>(sorted.size());
    s.median = Quantile(sorted, 0.5);
    s.q1 = Quantile(sorted, 0.25);
    s.q3 = Quantile(sorted, 0.75);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sxseval
