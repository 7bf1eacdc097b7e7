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

#ifndef SXSEVAL_PROFILING_H_
#define SXSEVAL_PROFILING_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sxseval/model.h"

namespace sxseval {

struct DistributionOptions {
  // Count a system's MQM errors once per side-by-side pair it appears in,
  // so MQM and SXS_MQM totals cover the same material.
  bool duplicate_rule = false;
  bool subcategories = false;  // default: top-level categories only
};

struct ErrorDistribution {
  Setting setting = Setting::kMqm;
  std::map<std::pair<ErrorCategory, Severity>, int64_t> counts;
  std::map<std::pair<ErrorCategory, Severity>, double> percentages;  // fractions
  int64_t total = 0;
  bool percentages_defined = false;  // false when total == 0
};

// Target-side errors (unspecified spans included) over all annotators.
ErrorDistribution ComputeErrorDistribution(const Project& project, Setting setting,
                                           const DistributionOptions& options = {});

struct MatchOptions {
  bool exact = false;  // identical offsets instead of maximal overlap
};

// Greedy pairing by decreasing character overlap; ties go to the smaller
// start offset (first list, then second). Each span is used at most once.
// Returns index pairs into (first, second).
std::vector<std::pair<size_t, size_t>> MatchSpans(const std::vector<ErrorSpan>& first,
                                                  const std::vector<ErrorSpan>& second,
                                                  const MatchOptions& options = {});

struct ErrorMatch {
  SegmentRef segment;
  std::string partner;  // SXS_MQM occurrence
  ErrorSpan mqm;
  ErrorSpan sxs;
};

// The annotator's MQM errors on `system` matched against each of its
// SXS_MQM occurrences. Source-side and unspecified spans are skipped.
std::vector<ErrorMatch> MatchErrorsAcrossSettings(const Project& project,
                                                  const std::string& annotator,
                                                  const std::string& system,
                                                  const MatchOptions& options = {});

struct ConversionMatrix {
  std::map<std::pair<Category, Category>, int64_t> cells;  // (MQM, SXS_MQM)
  int64_t total = 0;
};

// Over all annotators and systems. Throws E_NO_MATCHES.
ConversionMatrix BuildConversionMatrix(const Project& project, const MatchOptions& options = {});

struct AnnotatorStats {
  std::string annotator;
  Setting setting = Setting::kMqm;
  int64_t error_count = 0;
  double z = 0;
  bool flagged = false;
};

// z against the pool's mean and population std; flagged iff z > threshold.
// Throws E_TOO_FEW for fewer than two annotators.
std::vector<AnnotatorStats> OutlierStats(
    const std::vector<std::pair<std::string, int64_t>>& counts, Setting setting,
    double threshold = 2.0);

// Target-side error totals per annotator in an MQM setting.
std::vector<AnnotatorStats> AnnotatorOutliers(const Project& project, Setting setting,
                                              double threshold = 2.0);

struct ScoreSummary {
  std::string label;      // anonymized "A1", "A2", ... in annotator-id order
  std::string annotator;  // kept for callers that need the mapping
  std::vector<double> scores;  // raw segment scores, canonical cell order
  double mean = 0;
  double median = 0;
  double q1 = 0;
  double q3 = 0;
};

// Linear-interpolation quantile of sorted data, q in [0, 1].
double Quantile(const std::vector<double>& sorted, double q);

std::vector<ScoreSummary> ScoreDistributionExport(const Project& project, Setting setting);

}  // namespace sxseval

#endif  // SXSEVAL_PROFILING_H_
