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

#ifndef SXSEVAL_MODEL_H_
#define SXSEVAL_MODEL_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace sxseval {

// Top-level MQM error categories.
enum class Category : uint8_t {
  kAccuracy,
  kFluency,
  kStyle,
  kTerminology,
  kLocaleConvention,
  kNonTranslation,
  kOther,
  kSourceIssue,
};
inline constexpr int kNumCategories = 8;

enum class Subcategory : uint8_t {
  // Accuracy
  kReinterpretation,
  kMistranslation,
  kGenderMismatch,
  kUntranslated,
  kAddition,
  kOmission,
  // Fluency
  kInconsistency,
  kGrammar,
  kRegister,
  kSpelling,
  kTextBreaking,
  kPunctuation,
  kCharacterEncoding,
  // Style
  kUnnaturalOrAwkward,
  kBadSentenceStructure,
  kArchaicOrObscureWordChoice,
  // Terminology
  kInappropriateForContext,
  kInconsistent,
  // Locale convention
  kAddressFormat,
  kDateFormat,
  kCurrencyFormat,
  kTelephoneFormat,
  kTimeFormat,
  kNameFormat,
};

std::span<const Category> AllCategories();
std::span<const Subcategory> SubcategoriesOf(Category category);
Category ParentOf(Subcategory sub);

struct ErrorCategory {
  Category category = Category::kOther;
  std::optional<Subcategory> subcategory;

  bool IsValid() const;
  auto operator<=>(const ErrorCategory&) const = default;
};

enum class Severity : uint8_t { kMajor, kMinor };
enum class Side : uint8_t { kSource, kTarget };
enum class Setting : uint8_t { kMqm, kSxsMqm, kSxsRr };
inline constexpr Setting kAllSettings[] = {Setting::kMqm, Setting::kSxsMqm,
                                           Setting::kSxsRr};

// Display names as used in the WMT MQM release ("Non-translation!", ...).
std::string_view Name(Category category);
std::string_view Name(Subcategory sub);
std::string_view Name(Severity severity);
std::string_view Name(Setting setting);
std::string Path(const ErrorCategory& category);  // "Accuracy/Mistranslation"

// Case- and punctuation-insensitive lookups; nullopt when unknown.
std::optional<ErrorCategory> ParseCategoryPath(std::string_view path);
std::optional<Severity> ParseSeverity(std::string_view s);
std::optional<Setting> ParseSetting(std::string_view s);

struct SegmentRef {
  std::string doc_id;
  std::string seg_id;

  auto operator<=>(const SegmentRef&) const = default;
};

struct TranslationUnit {
  std::string system;
  SegmentRef segment;
  std::string source;
  std::string target;  // clean text, no span markers

  bool operator==(const TranslationUnit&) const = default;
};

struct ErrorSpan {
  Side side = Side::kTarget;
  size_t start = 0;  // scalar offset, inclusive
  size_t end = 0;    // scalar offset, exclusive
  ErrorCategory category;
  Severity severity = Severity::kMinor;
  // Whole-segment error without a locatable span; start == end == 0.
  bool unspecified_span = false;

  auto operator<=>(const ErrorSpan&) const = default;
};

struct MqmAnnotation {
  std::string annotator;
  Setting setting = Setting::kMqm;
  std::string system;
  SegmentRef segment;
  std::vector<ErrorSpan> errors;  // sorted; empty means judged error-free
  std::optional<std::string> pair_partner;  // set iff setting == kSxsMqm

  bool operator==(const MqmAnnotation&) const = default;
};

enum class RrValue : uint8_t {
  kAMuchBetter,
  kABetter,
  kSame,
  kBBetter,
  kBMuchBetter,
};
std::string_view Name(RrValue value);  // "a_much_better", ...
std::optional<RrValue> ParseRrValue(std::string_view s);

struct RrJudgment {
  std::string annotator;
  SegmentRef segment;
  std::string system_a;
  std::string system_b;
  RrValue value = RrValue::kSame;

  bool operator==(const RrJudgment&) const = default;
};

enum class ComparisonLabel : uint8_t { kABetter, kTie, kBBetter };
std::string_view Name(ComparisonLabel label);
ComparisonLabel Flip(ComparisonLabel label);

// Tallies for pairwise ranking agreement between two settings.
struct PraCounts {
  int64_t concordant = 0;
  int64_t discordant = 0;
  int64_t tied_alpha_only = 0;
  int64_t tied_beta_only = 0;
  int64_t tied_both = 0;

  int64_t Total() const {
    return concordant + discordant + tied_alpha_only + tied_beta_only + tied_both;
  }
  bool operator==(const PraCounts&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<std::string> seg_ids;

  bool operator==(const Document&) const = default;
};

// A pair of systems compared side by side. `group` labels the selection
// criterion ("top2", "high-sim", "low-sim"); it may be empty.
struct SystemPair {
  std::string first;
  std::string second;
  std::string group;

  bool Contains(std::string_view system) const {
    return first == system || second == system;
  }
  bool SameSystems(std::string_view a, std::string_view b) const {
    return (first == a && second == b) || (first == b && second == a);
  }
  bool operator==(const SystemPair&) const = default;
};

struct Project {
  std::string language_pair;
  std::vector<Document> documents;
  std::set<std::string> systems;
  std::vector<TranslationUnit> units;
  std::vector<MqmAnnotation> mqm;  // both MQM and SXS_MQM settings
  std::vector<RrJudgment> rr;
  std::vector<SystemPair> designated_pairs;
  std::set<std::string> annotators;

  bool operator==(const Project&) const = default;
};

struct Violation {
  std::string code;
  std::string location;

  auto operator<=>(const Violation&) const = default;
};

// Every broken invariant, sorted by (code, location). Empty iff valid.
std::vector<Violation> ValidateProject(const Project& project);

// Invariants of a single annotation against its unit; used by the campaign
// service before accepting a submission.
std::vector<Violation> ValidateAnnotation(const MqmAnnotation& annotation,
                                          const TranslationUnit& unit);

// Sorts units, annotations, errors, and judgments into canonical order.
void Canonicalize(Project& project);
void SortErrors(std::vector<ErrorSpan>& errors);

bool AnnotationKeyLess(const MqmAnnotation& a, const MqmAnnotation& b);
bool JudgmentKeyLess(const RrJudgment& a, const RrJudgment& b);

// Read-only lookup tables over a Project. The project must outlive the index.
class ProjectIndex {
 public:
  explicit ProjectIndex(const Project& project);

  const Project& project() const { return project_; }

  const TranslationUnit* Unit(std::string_view system, const SegmentRef& segment) const;

  // partner is ignored for the MQM setting.
  const MqmAnnotation* Annotation(Setting setting, std::string_view annotator,
                                  std::string_view system, const SegmentRef& segment,
                                  std::string_view partner = {}) const;

  // All annotations of `system` on `segment` by `annotator` in `setting`.
  std::vector<const MqmAnnotation*> Annotations(Setting setting,
                                                std::string_view annotator,
                                                std::string_view system,
                                                const SegmentRef& segment) const;

  // Judgment on the unordered pair {a, b}; the caller checks orientation.
  const RrJudgment* Judgment(std::string_view annotator, const SegmentRef& segment,
                             std::string_view a, std::string_view b) const;

  // Segments in document order.
  const std::vector<SegmentRef>& segments() const { return segments_; }
  std::optional<size_t> SegmentPosition(const SegmentRef& segment) const;

  const std::vector<std::string>& annotators_of(Setting setting) const;

 private:
  using MqmKey = std::tuple<Setting, std::string, std::string, SegmentRef, std::string>;
  using RrKey = std::tuple<std::string, SegmentRef, std::string, std::string>;

  const Project& project_;
  std::map<std::pair<std::string, SegmentRef>, size_t> units_;
  std::map<MqmKey, size_t> mqm_;
  std::map<RrKey, size_t> rr_;
  std::vector<SegmentRef> segments_;
  std::map<SegmentRef, size_t> segment_pos_;
  std::map<Setting, std::vector<std::string>> annotators_;
};

}  // namespace sxseval

#endif  // SXSEVAL_MODEL_H_
