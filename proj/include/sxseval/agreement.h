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

#ifndef SXSEVAL_AGREEMENT_H_
#define SXSEVAL_AGREEMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sxseval/model.h"
#include "sxseval/scoring.h"

namespace sxseval {

// Lower score is better; exact equality is a tie.
ComparisonLabel LabelFromScores(double score_a, double score_b);
ComparisonLabel LabelFromRr(RrValue value);

struct LabelUnit {
  SegmentRef segment;
  std::string system_a;
  std::string system_b;
  std::string group;  // designated pair group

  bool operator==(const LabelUnit&) const = default;
};

struct LabelMatrix {
  std::vector<LabelUnit> units;
  std::vector<std::string> annotators;
  // labels[unit][annotator]; every unit has at least one label.
  std::vector<std::vector<std::optional<ComparisonLabel>>> labels;

  int64_t LabelCount() const;
};

struct LabelOptions {
  // Labels from z-scores instead of raw scores (MQM settings only).
  bool use_z = false;
  ZGrouping grouping = ZGrouping::kPerSetting;
};

// One unit per (segment, designated pair) in document order, pairs in
// project order. Throws E_NO_PAIRS.
LabelMatrix BuildLabelMatrix(const Project& project, Setting setting,
                             const LabelOptions& options = {});

LabelMatrix FilterUnits(const LabelMatrix& matrix,
                        const std::function<bool(const LabelUnit&)>& keep);

struct AgreementResult {
  double alpha = 0;
  int64_t n_units = 0;   // units with at least two labels
  int64_t n_labels = 0;  // labels in those units
};

// Nominal Krippendorff's alpha over units given as lists of category codes.
// Units with fewer than two values are ignored. Throws E_DEGENERATE when
// fewer than two pairable values exist or expected disagreement is zero.
AgreementResult NominalAlpha(const std::vector<std::vector<int>>& units);

AgreementResult KrippendorffAlpha(const LabelMatrix& matrix);

// Fraction of present labels that are ties. Throws E_EMPTY.
double TieRate(const LabelMatrix& matrix);

enum class LengthSide { kSource, kReferenceTarget };

struct LengthRule {
  LengthSide side = LengthSide::kSource;
  std::string reference_system;  // for kReferenceTarget
};

// English side per language pair: the source when it is English, else the
// target of `reference_system`.
LengthRule DefaultLengthRule(const Project& project,
                             const std::string& reference_system = "refA");

// Indices sorted by ascending count (stable), cut into k consecutive groups
// whose sizes differ by at most one; earlier groups take the remainder.
std::vector<std::vector<size_t>> SplitIntoBuckets(const std::vector<size_t>& counts, int k);

// Throws E_EMPTY, E_BAD_ARGUMENT (k < 1), E_NO_REFERENCE.
std::vector<std::vector<SegmentRef>> LengthBuckets(const Project& project, int k,
                                                   const LengthRule& rule);

struct AgreementRow {
  Setting setting = Setting::kMqm;
  std::string scope;  // "all", a pair group, or "bucket-i"
  std::optional<double> alpha;  // absent when degenerate
  int64_t n_units = 0;
  int64_t n_labels = 0;
  std::optional<double> tie_rate;
};

struct AgreementReportOptions {
  std::vector<Setting> settings = {Setting::kMqm, Setting::kSxsMqm, Setting::kSxsRr};
  int buckets = 3;  // 0 disables the length analysis
  std::optional<LengthRule> length_rule;
  LabelOptions labels;
};

std::vector<AgreementRow> AgreementReport(const Project& project,
                                          const AgreementReportOptions& options);

}  // namespace sxseval

#endif  // SXSEVAL_AGREEMENT_H_
