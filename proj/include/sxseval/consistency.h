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

#ifndef SXSEVAL_CONSISTENCY_H_
#define SXSEVAL_CONSISTENCY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sxseval/model.h"

// Inter-translation consistency: does one annotator mark the same error
// when two translations share the erroneous text?
namespace sxseval {

enum class OpKind : uint8_t { kEqual, kReplace, kDelete, kInsert };
std::string_view Name(OpKind kind);

struct AlignOp {
  OpKind kind = OpKind::kEqual;
  size_t a_begin = 0;
  size_t a_end = 0;
  size_t b_begin = 0;
  size_t b_end = 0;

  bool operator==(const AlignOp&) const = default;
};

// Ratcliff/Obershelp opcodes in the style of Python's
// difflib.SequenceMatcher(None, a, b, autojunk=False).get_opcodes().
std::vector<AlignOp> AlignTokens(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b);

enum class ItcCriterion : uint8_t { kSpan, kSpanCat, kSpanSev, kSpanCatSev };
inline constexpr ItcCriterion kAllCriteria[] = {ItcCriterion::kSpan, ItcCriterion::kSpanCat,
                                                ItcCriterion::kSpanSev,
                                                ItcCriterion::kSpanCatSev};
std::string_view Name(ItcCriterion criterion);  // "span", "span+cat", ...

struct ItcOptions {
  // Lenient: a span is potential if any covered token is in an equal op.
  bool lenient_overlap = false;
  // Category agreement at subcategory rather than top-level granularity.
  bool subcategory_match = false;
};

// A paired candidate counts once toward `potential`; each unpaired
// potential error counts once as well.
struct ItcCounts {
  int64_t potential = 0;
  std::array<int64_t, 4> matched{};  // indexed by ItcCriterion

  int64_t Matched(ItcCriterion c) const { return matched[static_cast<size_t>(c)]; }
  std::optional<double> Percentage(ItcCriterion c) const;
  ItcCounts& operator+=(const ItcCounts& other);
  bool operator==(const ItcCounts&) const = default;
};

// One segment: errors of the same annotator on the two target texts.
// Source-side and unspecified-span errors are ignored.
ItcCounts CompareSegment(std::string_view target_a, const std::vector<ErrorSpan>& errors_a,
                         std::string_view target_b, const std::vector<ErrorSpan>& errors_b,
                         const ItcOptions& options = {});

struct ItcResult {
  std::string annotator;
  std::string system_a;
  std::string system_b;
  int64_t segments = 0;
  ItcCounts counts;
};

// For SXS_MQM, a designated pair uses the annotations made with the two
// systems side by side; any other pair uses each system's primary
// occurrence (its last designated pair). Throws E_NO_OVERLAP.
ItcResult Itc(const Project& project, Setting setting, const std::string& annotator,
              const std::string& system_a, const std::string& system_b,
              const ItcOptions& options = {});

enum class PairScope { kDesignated, kNonDesignated };
std::string_view Name(PairScope scope);

// Pairs in scope, among systems annotated in `setting`.
std::vector<SystemPair> PairsInScope(const Project& project, Setting setting, PairScope scope);

struct ItcRow {
  PairScope scope = PairScope::kDesignated;
  Setting setting = Setting::kMqm;
  ItcCriterion criterion = ItcCriterion::kSpan;
  std::optional<double> mean_percentage;  // over annotators with potential > 0
  int64_t n_annotators = 0;
  int64_t n_pairs = 0;
};

// Per annotator, counts are pooled over the pairs in scope; the reported
// figure is the mean over annotators.
std::vector<ItcRow> ItcReport(const Project& project, Setting setting, PairScope scope,
                              const ItcOptions& options = {});

}  // namespace sxseval

#endif  // SXSEVAL_CONSISTENCY_H_
