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

#ifndef SXSEVAL_RANKING_H_
#define SXSEVAL_RANKING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sxseval/ingest.h"
#include "sxseval/model.h"
#include "sxseval/scoring.h"

namespace sxseval {

// ---- Pairwise ranking agreement between two settings.

using UnitKey = std::tuple<SegmentRef, std::string, std::string>;  // (segment, a, b)
using UnitLabels = std::map<UnitKey, ComparisonLabel>;

struct PraResult {
  PraCounts counts;
  double value = 0;
};

// Throws E_UNIT_MISMATCH when the unit sets differ, E_EMPTY when both are
// empty.
PraResult Pra(const UnitLabels& alpha, const UnitLabels& beta);

struct SegmentLabelOptions {
  bool use_z = false;
  ZGrouping grouping = ZGrouping::kPerSetting;
};

// Label per (segment, designated pair) from segment scores averaged over
// annotators; side-by-side settings use only the cells where the pair was
// on screen together.
UnitLabels SegmentLabels(const Project& project, Setting setting,
                         const SegmentLabelOptions& options = {});

struct PraRow {
  Setting alpha = Setting::kMqm;
  Setting beta = Setting::kSxsMqm;
  PraResult result;
  int64_t dropped_units = 0;  // present in only one of the two settings
};

// All setting pairs with data, compared on their common units.
std::vector<PraRow> PraReport(const Project& project, const SegmentLabelOptions& options = {});

// ---- Paired permutation test.

// Two-sided paired sign-flip test on |mean(a) - mean(b)|. Each trial swaps
// every pair with probability 1/2; p = (1 + #{stat >= observed}) /
// (1 + trials). Trials run in blocks of 256 whose generators are seeded
// from (seed, block index), so the result does not depend on threading.
// Throws E_LENGTH_MISMATCH, E_TOO_SHORT (n < 2), E_BAD_ARGUMENT.
double PermutationTest(const std::vector<double>& a, const std::vector<double>& b,
                       int64_t trials, uint64_t seed);

struct SignificanceResult {
  std::string better;
  std::string worse;
  double better_score = 0;
  double worse_score = 0;
  double p_value = 1;
  int64_t trials = 0;
  uint64_t seed = 0;
  int64_t n_segments = 0;
};

struct RankOptions {
  bool use_z = true;  // MQM settings only; RR always uses raw penalties
  ZGrouping grouping = ZGrouping::kPerSetting;
  int64_t trials = 10000;
  uint64_t seed = 0;
};

// Throws E_SEGMENT_MISMATCH when the two systems were scored on different
// segments.
SignificanceResult RankSystemPair(const Project& project, Setting setting,
                                  const SystemPair& pair, const RankOptions& options);

struct RankRow {
  std::string group;
  Setting setting = Setting::kMqm;
  SignificanceResult result;
};

// Every designated pair in every setting with data.
std::vector<RankRow> RankReport(const Project& project, const RankOptions& options);

// ---- Cross-BLEU and system-pair selection.

// Corpus BLEU-4 of hypotheses against single references, whitespace
// tokens on NFC text, no smoothing. Throws E_EMPTY, E_LENGTH_MISMATCH.
double CorpusBleu(const std::vector<std::string>& hypotheses,
                  const std::vector<std::string>& references);

struct CrossBleuResult {
  double score = 0;   // mean of the two directions
  double a_as_hyp = 0;
  double b_as_hyp = 0;
};

CrossBleuResult CrossBleu(const std::vector<std::string>& outputs_a,
                          const std::vector<std::string>& outputs_b);

struct PairDiagnostic {
  std::string a;  // better-ranked system
  std::string b;
  int rank_a = 0;  // 1-based
  int rank_b = 0;
  double p_value = 1;
  CrossBleuResult cross_bleu;
  int64_t n_segments = 0;
};

struct PairSelection {
  std::vector<std::pair<std::string, double>> ranking;  // best first
  std::optional<SystemPair> top2;  // absent when the top two differ significantly
  std::vector<SystemPair> high_sim;
  std::vector<SystemPair> low_sim;
  std::vector<PairDiagnostic> diagnostics;  // every pair, in rank order

  std::vector<SystemPair> Pairs() const;
};

struct SelectionOptions {
  int64_t trials = 10000;
  uint64_t seed = 0;
  double threshold = 0.05;  // similar quality iff p > threshold
  int per_group = 2;
  bool higher_is_better = true;  // metric direction
};

// `outputs` supplies the translations for cross-BLEU. Throws E_TOO_FEW
// (fewer than six systems), E_INSUFFICIENT_PAIRS, E_MISSING_OUTPUT.
PairSelection SelectPairs(const std::vector<MetricScore>& metric_scores,
                          const std::vector<TranslationUnit>& outputs,
                          const SelectionOptions& options);

}  // namespace sxseval

#endif  // SXSEVAL_RANKING_H_
