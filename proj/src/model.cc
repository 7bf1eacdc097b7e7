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

#include "sxseval/model.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "sxseval/text.h"

namespace sxseval {
namespace {

constexpr std::array kCategories = {
    Category::kAccuracy,         Category::kFluency,        Category::kStyle,
    Category::kTerminology,      Category::kLocaleConvention, Category::kNonTranslation,
    Category::kOther,            Category::kSourceIssue,
};

constexpr std::array kAccuracy = {
    Subcategory::kReinterpretation, Subcategory::kMistranslation,
    Subcategory::kGenderMismatch,   Subcategory::kUntranslated,
    Subcategory::kAddition,         Subcategory::kOmission,
};
constexpr std::array kFluency = {
    Subcategory::kInconsistency, Subcategory::kGrammar,      Subcategory::kRegister,
    Subcategory::kSpelling,      Subcategory::kTextBreaking, Subcategory::kPunctuation,
    Subcategory::kCharacterEncoding,
};
constexpr std::array kStyle = {
    Subcategory::kUnnaturalOrAwkward,
    Subcategory::kBadSentenceStructure,
    Subcategory::kArchaicOrObscureWordChoice,
};
constexpr std::array kTerminology = {
    Subcategory::kInappropriateForContext,
    Subcategory::kInconsistent,
};
constexpr std::array kLocale = {
    Subcategory::kAddressFormat,   Subcategory::kDateFormat, Subcategory::kCurrencyFormat,
    Subcategory::kTelephoneFormat, Subcategory::kTimeFormat, Subcategory::kNameFormat,
};

// Lower-case alphanumerics only: "Non-translation!" -> "nontranslation".
std::string Key(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

std::optional<Category> ParseCategoryKey(const std::string& key) {
  static const std::map<std::string, Category> kMap = {
      {"accuracy", Category::kAccuracy},
      {"fluency", Category::kFluency},
      {"style", Category::kStyle},
      {"terminology", Category::kTerminology},
      {"localeconvention", Category::kLocaleConvention},
      {"locale", Category::kLocaleConvention},
      {"nontranslation", Category::kNonTranslation},
      {"other", Category::kOther},
      {"sourceissue", Category::kSourceIssue},
      {"source", Category::kSourceIssue},
  };
  auto it = kMap.find(key);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

// Aliases seen in the public WMT MQM releases.
std::optional<Subcategory> ParseSubcategoryAlias(Category parent, const std::string& key) {
  if (parent == Category::kAccuracy && key == "creativereinterpretation") {
    return Subcategory::kReinterpretation;
  }
  if (parent == Category::kStyle && key == "awkward") {
    return Subcategory::kUnnaturalOrAwkward;
  }
  if (parent == Category::kTerminology && key == "inappropriate") {
    return Subcategory::kInappropriateForContext;
  }
  return std::nullopt;
}

std::string SpanLocation(const ErrorSpan& e) {
  return std::string(e.side == Side::kSource ? "source" : "target") + "[" +
         std::to_string(e.start) + "," + std::to_string(e.end) + ")";
}

std::string AnnotationLocation(const MqmAnnotation& a) {
  std::string loc = std::string(Name(a.setting)) + "/" + a.annotator + "/" + a.system +
                    "/" + a.segment.doc_id + "/" + a.segment.seg_id;
  if (a.pair_partner) loc += "/vs:" + *a.pair_partner;
  return loc;
}

std::string SegmentLocation(const SegmentRef& s) { return s.doc_id + "/" + s.seg_id; }

void CheckText(std::string_view text, const std::string& where,
               std::vector<Violation>& out) {
  if (!text::IsValidUtf8(text)) {
    out.push_back({"E_BAD_UTF8", where});
    return;
  }
  if (!text::IsNfc(text)) out.push_back({"E_NOT_NFC", where});
  if (text.find("<v>") != std::string_view::npos ||
      text.find("</v>") != std::string_view::npos) {
    out.push_back({"E_MARKER_IN_TEXT", where});
  }
  if (text.find_first_of("\t\n\r") != std::string_view::npos) {
    out.push_back({"E_TAB_IN_FIELD", where});
  }
}

void CheckId(std::string_view id, const std::string& where, std::vector<Violation>& out) {
  if (id.empty()) {
    out.push_back({"E_EMPTY_ID", where});
  } else if (id.find_first_of("\t\n\r") != std::string_view::npos) {
    out.push_back({"E_TAB_IN_FIELD", where});
  }
}

void CheckErrors(const MqmAnnotation& a, size_t source_len, size_t target_len,
                 std::vector<Violation>& out) {
  const std::string loc = AnnotationLocation(a);
  for (const ErrorSpan& e : a.errors) {
    const std::string where = loc + "@" + SpanLocation(e);
    if (!e.category.IsValid()) out.push_back({"E_SUBCATEGORY", where});
    if (e.category.category == Category::kNonTranslation &&
        e.severity != Severity::kMajor) {
      out.push_back({"E_SEVERITY_NONTRANSLATION", where});
    }
    if ((e.side == Side::kSource) != (e.category.category == Category::kSourceIssue)) {
      out.push_back({"E_SIDE_CATEGORY", where});
    }
    if (e.unspecified_span) {
      if (e.start != 0 || e.end != 0) out.push_back({"E_UNSPECIFIED_OFFSETS", where});
      continue;
    }
    const size_t len = e.side == Side::kSource ? source_len : target_len;
    if (e.start > e.end || e.end > len) {
      out.push_back({"E_SPAN_BOUNDS", where});
    } else if (e.start == e.end) {
      out.push_back({"E_EMPTY_SPAN", where});
    }
  }
  if (!std::is_sorted(a.errors.begin(), a.errors.end())) {
    out.push_back({"E_UNSORTED_ERRORS", loc});
  }
}

size_t SafeLength(std::string_view s) {
  return text::IsValidUtf8(s) ? text::Length(s) : 0;
}

}  // namespace

std::span<const Category> AllCategories() { return kCategories; }

std::span<const Subcategory> SubcategoriesOf(Category category) {
  switch (category) {
    case Category::kAccuracy: return kAccuracy;
    case Category::kFluency: return kFluency;
    case Category::kStyle: return kStyle;
    case Category::kTerminology: return kTerminology;
    case Category::kLocaleConvention: return kLocale;
    default: return {};
  }
}

Category ParentOf(Subcategory sub) {
  for (Category c : kCategories) {
    for (Subcategory s : SubcategoriesOf(c)) {
      if (s == sub) return c;
    }
  }
  return Category::kOther;
}

bool ErrorCategory::IsValid() const {
  return !subcategory.has_value() || ParentOf(*subcategory) == category;
}

std::string_view Name(Category category) {
  switch (category) {
    case Category::kAccuracy: return "Accuracy";
    case Category::kFluency: return "Fluency";
    case Category::kStyle: return "Style";
    case Category::kTerminology: return "Terminology";
    case Category::kLocaleConvention: return "Locale convention";
    case Category::kNonTranslation: return "Non-translation!";
    case Category::kOther: return "Other";
    case Category::kSourceIssue: return "Source issue";
  }
  return "?";
}

std::string_view Name(Subcategory sub) {
  switch (sub) {
    case Subcategory::kReinterpretation: return "Reinterpretation";
    case Subcategory::kMistranslation: return "Mistranslation";
    case Subcategory::kGenderMismatch: return "Gender mismatch";
    case Subcategory::kUntranslated: return "Untranslated";
    case Subcategory::kAddition: return "Addition";
    case Subcategory::kOmission: return "Omission";
    case Subcategory::kInconsistency: return "Inconsistency";
    case Subcategory::kGrammar: return "Grammar";
    case Subcategory::kRegister: return "Register";
    case Subcategory::kSpelling: return "Spelling";
    case Subcategory::kTextBreaking: return "Text-breaking";
    case Subcategory::kPunctuation: return "Punctuation";
    case Subcategory::kCharacterEncoding: return "Character encoding";
    case Subcategory::kUnnaturalOrAwkward: return "Unnatural or awkward";
    case Subcategory::kBadSentenceStructure: return "Bad sentence structure";
    case Subcategory::kArchaicOrObscureWordChoice: return "Archaic or obscure word choice";
    case Subcategory::kInappropriateForContext: return "Inappropriate for context";
    case Subcategory::kInconsistent: return "Inconsistent";
    case Subcategory::kAddressFormat: return "Address format";
    case Subcategory::kDateFormat: return "Date format";
    case Subcategory::kCurrencyFormat: return "Currency format";
    case Subcategory::kTelephoneFormat: return "Telephone format";
    case Subcategory::kTimeFormat: return "Time format";
    case Subcategory::kNameFormat: return "Name format";
  }
  return "?";
}

std::string_view Name(Severity severity) {
  return severity == Severity::kMajor ? "Major" : "Minor";
}

std::string_view Name(Setting setting) {
  switch (setting) {
    case Setting::kMqm: return "MQM";
    case Setting::kSxsMqm: return "SXS_MQM";
    case Setting::kSxsRr: return "SXS_RR";
  }
  return "?";
}

std::string Path(const ErrorCategory& category) {
  std::string out(Name(category.category));
  if (category.subcategory) {
    out += "/";
    out += Name(*category.subcategory);
  }
  return out;
}

std::optional<ErrorCategory> ParseCategoryPath(std::string_view path) {
  const size_t slash = path.find('/');
  const std::string head = Key(path.substr(0, slash));
  const auto category = ParseCategoryKey(head);
  if (!category) return std::nullopt;
  ErrorCategory out{*category, std::nullopt};
  if (slash == std::string_view::npos) return out;
  const std::string tail = Key(path.substr(slash + 1));
  if (tail.empty()) return out;
  if (path.find('/', slash + 1) != std::string_view::npos) return std::nullopt;
  for (Subcategory s : SubcategoriesOf(*category)) {
    if (Key(Name(s)) == tail) {
      out.subcategory = s;
      return out;
    }
  }
  if (auto alias = ParseSubcategoryAlias(*category, tail)) {
    out.subcategory = alias;
    return out;
  }
  return std::nullopt;
}

std::optional<Severity> ParseSeverity(std::string_view s) {
  const std::string key = Key(s);
  if (key == "major") return Severity::kMajor;
  if (key == "minor") return Severity::kMinor;
  return std::nullopt;
}

std::optional<Setting> ParseSetting(std::string_view s) {
  const std::string key = Key(s);
  if (key == "mqm") return Setting::kMqm;
  if (key == "sxsmqm") return Setting::kSxsMqm;
  if (key == "sxsrr" || key == "rr") return Setting::kSxsRr;
  return std::nullopt;
}

std::string_view Name(RrValue value) {
  switch (value) {
    case RrValue::kAMuchBetter: return "a_much_better";
    case RrValue::kABetter: return "a_better";
    case RrValue::kSame: return "same";
    case RrValue::kBBetter: return "b_better";
    case RrValue::kBMuchBetter: return "b_much_better";
  }
  return "?";
}

std::optional<RrValue> ParseRrValue(std::string_view s) {
  const std::string key = text::ToLower(text::Trim(s));
  for (RrValue v : {RrValue::kAMuchBetter, RrValue::kABetter, RrValue::kSame,
                    RrValue::kBBetter, RrValue::kBMuchBetter}) {
    if (key == Name(v)) return v;
  }
  return std::nullopt;
}

std::string_view Name(ComparisonLabel label) {
  switch (label) {
    case ComparisonLabel::kABetter: return "A>B";
    case ComparisonLabel::kTie: return "A=B";
    case ComparisonLabel::kBBetter: return "A<B";
  }
  return "?";
}

ComparisonLabel Flip(ComparisonLabel label) {
  switch (label) {
    case ComparisonLabel::kABetter: return ComparisonLabel::kBBetter;
    case ComparisonLabel::kBBetter: return ComparisonLabel::kABetter;
    case ComparisonLabel::kTie: return ComparisonLabel::kTie;
  }
  return label;
}

std::vector<Violation> ValidateAnnotation(const MqmAnnotation& annotation,
                                          const TranslationUnit& unit) {
  std::vector<Violation> out;
  CheckErrors(annotation, SafeLength(unit.source), SafeLength(unit.target), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Violation> ValidateProject(const Project& project) {
  std::vector<Violation> out;

  std::set<SegmentRef> segments;
  for (const Document& doc : project.documents) {
    CheckId(doc.doc_id, "document", out);
    for (const std::string& seg : doc.seg_ids) {
      SegmentRef ref{doc.doc_id, seg};
      CheckId(seg, "segment " + SegmentLocation(ref), out);
      if (!segments.insert(ref).second) {
        out.push_back({"E_DUPLICATE_SEGMENT", SegmentLocation(ref)});
      }
    }
  }
  for (const std::string& s : project.systems) CheckId(s, "system", out);
  for (const std::string& a : project.annotators) CheckId(a, "annotator", out);

  // (system, segment) -> (source length, target length)
  std::map<std::pair<std::string, SegmentRef>, std::pair<size_t, size_t>> lengths;
  for (const TranslationUnit& u : project.units) {
    const std::string where = "unit " + u.system + "/" + SegmentLocation(u.segment);
    if (!project.systems.contains(u.system)) out.push_back({"E_UNKNOWN_SYSTEM", where});
    if (!segments.contains(u.segment)) out.push_back({"E_UNKNOWN_SEGMENT", where});
    CheckText(u.source, where + "/source", out);
    CheckText(u.target, where + "/target", out);
    auto [it, inserted] = lengths.emplace(
        std::make_pair(u.system, u.segment),
        std::make_pair(SafeLength(u.source), SafeLength(u.target)));
    if (!inserted) out.push_back({"E_DUPLICATE_UNIT", where});
  }

  std::set<std::tuple<Setting, std::string, std::string, SegmentRef, std::string>> seen;
  for (const MqmAnnotation& a : project.mqm) {
    const std::string loc = AnnotationLocation(a);
    if (a.setting == Setting::kSxsRr) out.push_back({"E_SETTING", loc});
    if (!project.annotators.contains(a.annotator)) {
      out.push_back({"E_UNKNOWN_ANNOTATOR", loc});
    }
    const bool sxs = a.setting == Setting::kSxsMqm;
    if (sxs != a.pair_partner.has_value()) {
      out.push_back({"E_PAIR_PARTNER", loc});
    } else if (a.pair_partner && (*a.pair_partner == a.system ||
                                  !project.systems.contains(*a.pair_partner))) {
      out.push_back({"E_PAIR_PARTNER", loc});
    }
    if (!seen.emplace(a.setting, a.annotator, a.system, a.segment,
                      a.pair_partner.value_or(""))
             .second) {
      out.push_back({"E_DUPLICATE_ANNOTATION", loc});
    }
    auto it = lengths.find({a.system, a.segment});
    if (it == lengths.end()) {
      out.push_back({"E_UNKNOWN_UNIT", loc});
      continue;
    }
    CheckErrors(a, it->second.first, it->second.second, out);
  }

  std::set<std::tuple<std::string, SegmentRef, std::string, std::string>> judged;
  for (const RrJudgment& j : project.rr) {
    const std::string loc = "RR/" + j.annotator + "/" + j.system_a + "~" + j.system_b +
                            "/" + SegmentLocation(j.segment);
    if (j.system_a == j.system_b) out.push_back({"E_SELF_PAIR", loc});
    if (!project.annotators.contains(j.annotator)) {
      out.push_back({"E_UNKNOWN_ANNOTATOR", loc});
    }
    if (!lengths.contains({j.system_a, j.segment}) ||
        !lengths.contains({j.system_b, j.segment})) {
      out.push_back({"E_UNKNOWN_UNIT", loc});
    }
    const auto& [lo, hi] = std::minmax(j.system_a, j.system_b);
    if (!judged.emplace(j.annotator, j.segment, lo, hi).second) {
      out.push_back({"E_DUPLICATE_JUDGMENT", loc});
    }
  }

  std::set<std::pair<std::string, std::string>> pairs;
  for (const SystemPair& p : project.designated_pairs) {
    const std::string loc = "pair " + p.first + "~" + p.second;
    if (!project.systems.contains(p.first) || !project.systems.contains(p.second)) {
      out.push_back({"E_UNKNOWN_SYSTEM", loc});
    }
    if (p.first == p.second) out.push_back({"E_SELF_PAIR", loc});
    if (!pairs.insert(std::minmax(p.first, p.second)).second) {
      out.push_back({"E_DUPLICATE_PAIR", loc});
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void SortErrors(std::vector<ErrorSpan>& errors) {
  std::sort(errors.begin(), errors.end());
}

bool AnnotationKeyLess(const MqmAnnotation& a, const MqmAnnotation& b) {
  return std::tie(a.segment, a.system, a.annotator, a.setting, a.pair_partner) <
         std::tie(b.segment, b.system, b.annotator, b.setting, b.pair_partner);
}

bool JudgmentKeyLess(const RrJudgment& a, const RrJudgment& b) {
  return std::tie(a.segment, a.system_a, a.system_b, a.annotator) <
         std::tie(b.segment, b.system_a, b.system_b, b.annotator);
}

void Canonicalize(Project& project) {
  std::sort(project.units.begin(), project.units.end(),
            [](const TranslationUnit& a, const TranslationUnit& b) {
              return std::tie(a.segment, a.system) < std::tie(b.segment, b.system);
            });
  for (MqmAnnotation& a : project.mqm) SortErrors(a.errors);
  std::stable_sort(project.mqm.begin(), project.mqm.end(), AnnotationKeyLess);
  std::stable_sort(project.rr.begin(), project.rr.end(), JudgmentKeyLess);
}

ProjectIndex::ProjectIndex(const Project& project) : project_(project) {
  for (size_t i = 0; i < project.units.size(); ++i) {
    units_.emplace(std::make_pair(project.units[i].system, project.units[i].segment), i);
  }
  std::map<Setting, std::set<std::string>> annotators;
  for (size_t i = 0; i < project.mqm.size(); ++i) {
    const MqmAnnotation& a = project.mqm[i];
    const std::string partner =
        a.setting == Setting::kMqm ? std::string() : a.pair_partner.value_or("");
    mqm_.emplace(MqmKey{a.setting, a.annotator, a.system, a.segment, partner}, i);
    annotators[a.setting].insert(a.annotator);
  }
  for (size_t i = 0; i < project.rr.size(); ++i) {
    const RrJudgment& j = project.rr[i];
    const auto& [lo, hi] = std::minmax(j.system_a, j.system_b);
    rr_.emplace(RrKey{j.annotator, j.segment, lo, hi}, i);
    annotators[Setting::kSxsRr].insert(j.annotator);
  }
  for (const Document& doc : project.documents) {
    for (const std::string& seg : doc.seg_ids) {
      SegmentRef ref{doc.doc_id, seg};
      if (segment_pos_.emplace(ref, segments_.size()).second) segments_.push_back(ref);
    }
  }
  for (Setting s : kAllSettings) {
    annotators_[s].assign(annotators[s].begin(), annotators[s].end());
  }
}

const TranslationUnit* ProjectIndex::Unit(std::string_view system,
                                          const SegmentRef& segment) const {
  auto it = units_.find(std::make_pair(std::string(system), segment));
  return it == units_.end() ? nullptr : &project_.units[it->second];
}

const MqmAnnotation* ProjectIndex::Annotation(Setting setting, std::string_view annotator,
                                              std::string_view system,
                                              const SegmentRef& segment,
                                              std::string_view partner) const {
  if (setting == Setting::kMqm) partner = {};
  auto it = mqm_.find(MqmKey{setting, std::string(annotator), std::string(system), segment,
                             std::string(partner)});
  return it == mqm_.end() ? nullptr : &project_.mqm[it->second];
}

std::vector<const MqmAnnotation*> ProjectIndex::Annotations(Setting setting,
                                                            std::string_view annotator,
                                                            std::string_view system,
                                                            const SegmentRef& segment) const {
  std::vector<const MqmAnnotation*> out;
  MqmKey lo{setting, std::string(annotator), std::string(system), segment, std::string()};
  for (auto it = mqm_.lower_bound(lo); it != mqm_.end(); ++it) {
    const auto& [s, a, sys, seg, partner] = it->first;
    if (s != setting || a != annotator || sys != system || seg != segment) break;
    out.push_back(&project_.mqm[it->second]);
  }
  return out;
}

const RrJudgment* ProjectIndex::Judgment(std::string_view annotator,
                                         const SegmentRef& segment, std::string_view a,
                                         std::string_view b) const {
  const bool ordered = a <= b;
  auto it = rr_.find(RrKey{std::string(annotator), segment, std::string(ordered ? a : b),
                           std::string(ordered ? b : a)});
  return it == rr_.end() ? nullptr : &project_.rr[it->second];
}

std::optional<size_t> ProjectIndex::SegmentPosition(const SegmentRef& segment) const {
  auto it = segment_pos_.find(segment);
  if (it == segment_pos_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& ProjectIndex::annotators_of(Setting setting) const {
  return annotators_.at(setting);
}

}  // namespace sxseval
