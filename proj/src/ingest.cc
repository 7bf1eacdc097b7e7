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

#include "sxseval/ingest.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <tuple>

#include "sxseval/error.h"
#include "sxseval/text.h"

namespace sxseval {
namespace {

std::string RowDetail(size_t row) { return "row " + std::to_string(row); }

// Lower-case alphanumerics only, for "No-error" / "no_error" style tokens.
std::string Squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

struct TsvRow {
  size_t line = 0;
  std::vector<std::string_view> fields;
};

class TsvReader {
 public:
  TsvReader(std::string_view bytes, std::string_view what) : what_(what) {
    size_t line = 0;
    size_t pos = 0;
    while (pos < bytes.size()) {
      size_t nl = bytes.find('\n', pos);
      if (nl == std::string_view::npos) nl = bytes.size();
      std::string_view text = bytes.substr(pos, nl - pos);
      pos = nl + 1;
      ++line;
      if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
      if (text.empty()) continue;
      TsvRow row{line, Split(text)};
      if (header_.empty() && columns_.empty()) {
        for (size_t i = 0; i < row.fields.size(); ++i) {
          columns_.emplace(text::ToLower(text::Trim(row.fields[i])), i);
        }
        header_ = std::move(row.fields);
        continue;
      }
      rows_.push_back(std::move(row));
    }
    if (header_.empty()) throw Error("E_BAD_HEADER", std::string(what_) + ": missing header");
  }

  size_t Column(std::string_view name) const {
    auto it = columns_.find(std::string(name));
    if (it == columns_.end()) {
      throw Error("E_BAD_HEADER", std::string(what_) + ": missing column '" +
                                      std::string(name) + "'");
    }
    width_ = std::max(width_, it->second + 1);
    return it->second;
  }

  bool Has(std::string_view name) const { return columns_.contains(std::string(name)); }

  const std::vector<TsvRow>& rows() const {
    for (const TsvRow& r : rows_) {
      if (r.fields.size() < width_) {
        throw Error("E_BAD_ROW", std::string(what_) + ": too few fields",
                    RowDetail(r.line));
      }
    }
    return rows_;
  }

 private:
  static std::vector<std::string_view> Split(std::string_view line) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
      const size_t tab = line.find('\t', pos);
      if (tab == std::string_view::npos) {
        out.push_back(line.substr(pos));
        return out;
      }
      out.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
  }

  std::string_view what_;
  std::vector<std::string_view> header_;
  std::map<std::string, size_t> columns_;
  std::vector<TsvRow> rows_;
  mutable size_t width_ = 0;
};

void CheckField(std::string_view value, std::string_view column) {
  if (value.find_first_of("\t\n\r") != std::string_view::npos) {
    throw Error("E_TAB_IN_FIELD", "field contains tab or newline", std::string(column));
  }
}

void CheckMarkers(std::string_view value, std::string_view column) {
  if (value.find(kSpanOpen) != std::string_view::npos ||
      value.find(kSpanClose) != std::string_view::npos) {
    throw Error("E_MARKER_IN_TEXT", "text contains a span marker", std::string(column));
  }
}

// Normalizes the three pieces around a span separately so offsets stay
// aligned with the marker positions.
ExtractedSpan NormalizeExtracted(ExtractedSpan in) {
  if (text::IsNfc(in.clean)) return in;
  if (!in.span) return {text::ToNfc(in.clean), std::nullopt};
  const auto [start, end] = *in.span;
  const std::string prefix = text::ToNfc(text::Slice(in.clean, 0, start));
  const std::string middle = text::ToNfc(text::Slice(in.clean, start, end));
  const std::string suffix =
      text::ToNfc(text::Slice(in.clean, end, text::Length(in.clean)));
  const size_t s = text::Length(prefix);
  return {prefix + middle + suffix, std::make_pair(s, s + text::Length(middle))};
}

ExtractedSpan ExtractAt(std::string_view marked, size_t line) {
  try {
    return NormalizeExtracted(ExtractSpan(marked));
  } catch (const Error& e) {
    throw Error(e.code(), e.message(), RowDetail(line));
  }
}

using UnitKey = std::pair<std::string, SegmentRef>;

void RecordUnit(std::map<UnitKey, TranslationUnit>& units, TranslationUnit unit,
                size_t line) {
  UnitKey key{unit.system, unit.segment};
  auto [it, inserted] = units.emplace(std::move(key), unit);
  if (!inserted && (it->second.source != unit.source || it->second.target != unit.target)) {
    throw Error("E_UNIT_CONFLICT", "rows disagree on the text of one unit",
                RowDetail(line) + " (" + unit.system + " " + unit.segment.doc_id + "/" +
                    unit.segment.seg_id + ")");
  }
}

std::vector<TranslationUnit> Values(std::map<UnitKey, TranslationUnit>& units) {
  std::vector<TranslationUnit> out;
  out.reserve(units.size());
  for (auto& [key, unit] : units) out.push_back(std::move(unit));
  std::sort(out.begin(), out.end(), [](const TranslationUnit& a, const TranslationUnit& b) {
    return std::tie(a.segment, a.system) < std::tie(b.segment, b.system);
  });
  return out;
}

}  // namespace

ExtractedSpan ExtractSpan(std::string_view marked) {
  std::string clean;
  clean.reserve(marked.size());
  std::optional<size_t> open_byte;
  std::optional<std::pair<size_t, size_t>> bytes;
  size_t i = 0;
  while (i < marked.size()) {
    if (marked.substr(i, kSpanOpen.size()) == kSpanOpen) {
      if (open_byte) throw Error("E_MARKER_UNBALANCED", "nested span marker");
      if (bytes) throw Error("E_MARKER_MULTIPLE", "more than one marked span");
      open_byte = clean.size();
      i += kSpanOpen.size();
    } else if (marked.substr(i, kSpanClose.size()) == kSpanClose) {
      if (!open_byte) throw Error("E_MARKER_UNBALANCED", "closing marker without opening");
      bytes = std::make_pair(*open_byte, clean.size());
      open_byte.reset();
      i += kSpanClose.size();
    } else {
      clean.push_back(marked[i++]);
    }
  }
  if (open_byte) throw Error("E_MARKER_UNBALANCED", "unclosed span marker");
  ExtractedSpan out{std::move(clean), std::nullopt};
  if (bytes) {
    const std::string_view view(out.clean);
    out.span = std::make_pair(text::Length(view.substr(0, bytes->first)),
                              text::Length(view.substr(0, bytes->second)));
  }
  return out;
}

std::string InsertMarkers(std::string_view clean, size_t start, size_t end) {
  const size_t length = text::Length(clean);
  if (start > end || end > length) {
    throw Error("E_SPAN_BOUNDS", "span outside text",
                "[" + std::to_string(start) + "," + std::to_string(end) + ") of " +
                    std::to_string(length));
  }
  const size_t b = text::ByteOffset(clean, start);
  const size_t e = text::ByteOffset(clean, end);
  std::string out;
  out.reserve(clean.size() + kSpanOpen.size() + kSpanClose.size());
  out.append(clean.substr(0, b));
  out.append(kSpanOpen);
  out.append(clean.substr(b, e - b));
  out.append(kSpanClose);
  out.append(clean.substr(e));
  return out;
}

MqmTsvData ParseMqmTsv(std::string_view bytes, Setting setting) {
  if (setting == Setting::kSxsRr) {
    throw Error("E_SETTING", "RR judgments are not stored in MQM TSV files");
  }
  const bool sxs = setting == Setting::kSxsMqm;
  TsvReader tsv(bytes, sxs ? "sxs_mqm.tsv" : "mqm.tsv");
  const size_t c_system = tsv.Column("system");
  tsv.Column("doc");
  const size_t c_doc_id = tsv.Column("doc_id");
  const size_t c_seg_id = tsv.Column("seg_id");
  const size_t c_rater = tsv.Column("rater");
  const size_t c_source = tsv.Column("source");
  const size_t c_target = tsv.Column("target");
  const size_t c_category = tsv.Column("category");
  const size_t c_severity = tsv.Column("severity");
  const size_t c_partner = sxs ? tsv.Column("pair_partner") : 0;

  using Key = std::tuple<SegmentRef, std::string, std::string, std::string>;
  std::map<Key, MqmAnnotation> merged;
  std::map<UnitKey, TranslationUnit> units;

  for (const TsvRow& row : tsv.rows()) {
    const auto& f = row.fields;
    MqmAnnotation key_fields;
    key_fields.setting = setting;
    key_fields.system = std::string(f[c_system]);
    key_fields.segment = {std::string(f[c_doc_id]), std::string(f[c_seg_id])};
    key_fields.annotator = std::string(f[c_rater]);
    if (sxs) {
      if (f[c_partner].empty()) {
        throw Error("E_PAIR_PARTNER", "missing pair_partner", RowDetail(row.line));
      }
      key_fields.pair_partner = std::string(f[c_partner]);
    }

    const ExtractedSpan source = ExtractAt(f[c_source], row.line);
    const ExtractedSpan target = ExtractAt(f[c_target], row.line);
    if (source.span && target.span) {
      throw Error("E_MARKER_MULTIPLE", "spans marked in both source and target",
                  RowDetail(row.line));
    }
    RecordUnit(units, {key_fields.system, key_fields.segment, source.clean, target.clean},
               row.line);

    Key key{key_fields.segment, key_fields.system, key_fields.annotator,
            key_fields.pair_partner.value_or("")};
    auto it = merged.find(key);
    if (it == merged.end()) it = merged.emplace(key, std::move(key_fields)).first;

    const std::string category_text = text::Trim(f[c_category]);
    const std::string severity_text = text::Trim(f[c_severity]);
    if (Squash(category_text) == "noerror" || Squash(severity_text) == "noerror") {
      continue;
    }
    const auto category = ParseCategoryPath(category_text);
    if (!category) {
      throw Error("E_UNKNOWN_CATEGORY", "unknown category '" + category_text + "'",
                  RowDetail(row.line));
    }
    const auto severity = ParseSeverity(severity_text);
    if (!severity) {
      throw Error("E_SEVERITY_PARSE", "unknown severity '" + severity_text + "'",
                  RowDetail(row.line));
    }
    ErrorSpan error;
    error.category = *category;
    error.severity = *severity;
    if (source.span) {
      error.side = Side::kSource;
      std::tie(error.start, error.end) = *source.span;
    } else if (target.span) {
      error.side = Side::kTarget;
      std::tie(error.start, error.end) = *target.span;
    } else {
      error.unspecified_span = true;
      error.side = category->category == Category::kSourceIssue ? Side::kSource : Side::kTarget;
    }
    it->second.errors.push_back(error);
  }

  MqmTsvData out;
  out.units = Values(units);
  for (auto& [key, annotation] : merged) {
    SortErrors(annotation.errors);
    out.annotations.push_back(std::move(annotation));
  }
  std::sort(out.annotations.begin(), out.annotations.end(), AnnotationKeyLess);
  return out;
}

std::string WriteMqmTsv(const std::vector<MqmAnnotation>& annotations,
                        const std::vector<TranslationUnit>& units, Setting setting) {
  const bool sxs = setting == Setting::kSxsMqm;
  std::map<UnitKey, const TranslationUnit*> unit_index;
  for (const TranslationUnit& u : units) unit_index.emplace(UnitKey{u.system, u.segment}, &u);

  std::vector<const MqmAnnotation*> rows;
  for (const MqmAnnotation& a : annotations) {
    if (a.setting == setting) rows.push_back(&a);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MqmAnnotation* a, const MqmAnnotation* b) {
                     return AnnotationKeyLess(*a, *b);
                   });

  std::string out = "system\tdoc\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity";
  out += sxs ? "\tpair_partner\n" : "\n";
  auto append_row = [&](const MqmAnnotation& a, std::string_view source,
                        std::string_view target, std::string_view category,
                        std::string_view severity) {
    // doc and doc_id carry the same identifier.
    for (std::string_view field : {std::string_view(a.system), std::string_view(a.segment.doc_id),
                                   std::string_view(a.segment.doc_id),
                                   std::string_view(a.segment.seg_id),
                                   std::string_view(a.annotator)}) {
      out.append(field);
      out.push_back('\t');
    }
    out.append(source);
    out.push_back('\t');
    out.append(target);
    out.push_back('\t');
    out.append(category);
    out.push_back('\t');
    out.append(severity);
    if (sxs) {
      out.push_back('\t');
      out.append(*a.pair_partner);
    }
    out.push_back('\n');
  };

  for (const MqmAnnotation* a : rows) {
    CheckField(a->system, "system");
    CheckField(a->segment.doc_id, "doc_id");
    CheckField(a->segment.seg_id, "seg_id");
    CheckField(a->annotator, "rater");
    if (sxs) {
      if (!a->pair_partner) throw Error("E_PAIR_PARTNER", "SXS_MQM annotation without partner");
      CheckField(*a->pair_partner, "pair_partner");
    }
    auto it = unit_index.find({a->system, a->segment});
    if (it == unit_index.end()) {
      throw Error("E_UNKNOWN_UNIT", "annotation without translation unit",
                  a->system + " " + a->segment.doc_id + "/" + a->segment.seg_id);
    }
    const TranslationUnit& unit = *it->second;
    CheckField(unit.source, "source");
    CheckField(unit.target, "target");
    CheckMarkers(unit.source, "source");
    CheckMarkers(unit.target, "target");

    if (a->errors.empty()) {
      append_row(*a, unit.source, unit.target, "No-error", "No-error");
      continue;
    }
    std::vector<ErrorSpan> errors = a->errors;
    SortErrors(errors);
    for (const ErrorSpan& e : errors) {
      const std::string category = Path(e.category);
      if (e.unspecified_span) {
        append_row(*a, unit.source, unit.target, category, Name(e.severity));
      } else if (e.side == Side::kSource) {
        append_row(*a, InsertMarkers(unit.source, e.start, e.end), unit.target, category,
                   Name(e.severity));
      } else {
        append_row(*a, unit.source, InsertMarkers(unit.target, e.start, e.end), category,
                   Name(e.severity));
      }
    }
  }
  return out;
}

std::vector<RrJudgment> ParseRrTsv(std::string_view bytes) {
  TsvReader tsv(bytes, "rr.tsv");
  const size_t c_doc_id = tsv.Column("doc_id");
  const size_t c_seg_id = tsv.Column("seg_id");
  const size_t c_a = tsv.Column("system_a");
  const size_t c_b = tsv.Column("system_b");
  const size_t c_rater = tsv.Column("rater");
  const size_t c_value = tsv.Column("value");
  std::vector<RrJudgment> out;
  for (const TsvRow& row : tsv.rows()) {
    const auto& f = row.fields;
    const auto value = ParseRrValue(f[c_value]);
    if (!value) {
      throw Error("E_BAD_VALUE", "unknown RR value '" + std::string(f[c_value]) + "'",
                  RowDetail(row.line));
    }
    if (f[c_a] == f[c_b]) {
      throw Error("E_SELF_PAIR", "system compared with itself", RowDetail(row.line));
    }
    out.push_back(RrJudgment{std::string(f[c_rater]),
                             {std::string(f[c_doc_id]), std::string(f[c_seg_id])},
                             std::string(f[c_a]), std::string(f[c_b]), *value});
  }
  std::stable_sort(out.begin(), out.end(), JudgmentKeyLess);
  return out;
}

std::string WriteRrTsv(const std::vector<RrJudgment>& judgments) {
  std::vector<const RrJudgment*> rows;
  for (const RrJudgment& j : judgments) rows.push_back(&j);
  std::stable_sort(rows.begin(), rows.end(), [](const RrJudgment* a, const RrJudgment* b) {
    return JudgmentKeyLess(*a, *b);
  });
  std::string out = "doc_id\tseg_id\tsystem_a\tsystem_b\trater\tvalue\n";
  for (const RrJudgment* j : rows) {
    for (const auto& [value, column] :
         {std::pair{std::string_view(j->segment.doc_id), "doc_id"},
          std::pair{std::string_view(j->segment.seg_id), "seg_id"},
          std::pair{std::string_view(j->system_a), "system_a"},
          std::pair{std::string_view(j->system_b), "system_b"},
          std::pair{std::string_view(j->annotator), "rater"}}) {
      CheckField(value, column);
      out.append(value);
      out.push_back('\t');
    }
    out.append(Name(j->value));
    out.push_back('\n');
  }
  return out;
}

std::vector<TranslationUnit> ParseUnitsTsv(std::string_view bytes) {
  TsvReader tsv(bytes, "units.tsv");
  const size_t c_system = tsv.Column("system");
  const size_t c_doc_id = tsv.Column("doc_id");
  const size_t c_seg_id = tsv.Column("seg_id");
  const size_t c_source = tsv.Column("source");
  const size_t c_target = tsv.Column("target");
  std::vector<TranslationUnit> out;
  std::set<UnitKey> seen;
  for (const TsvRow& row : tsv.rows()) {
    const auto& f = row.fields;
    TranslationUnit u{std::string(f[c_system]),
                      {std::string(f[c_doc_id]), std::string(f[c_seg_id])},
                      text::IsNfc(f[c_source]) ? std::string(f[c_source])
                                               : text::ToNfc(f[c_source]),
                      text::IsNfc(f[c_target]) ? std::string(f[c_target])
                                               : text::ToNfc(f[c_target])};
    if (!seen.insert({u.system, u.segment}).second) {
      throw Error("E_DUPLICATE_UNIT", "unit listed twice", RowDetail(row.line));
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::string WriteUnitsTsv(const std::vector<TranslationUnit>& units) {
  std::vector<const TranslationUnit*> rows;
  for (const TranslationUnit& u : units) rows.push_back(&u);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TranslationUnit* a, const TranslationUnit* b) {
                     return std::tie(a->segment, a->system) < std::tie(b->segment, b->system);
                   });
  std::string out = "system\tdoc_id\tseg_id\tsource\ttarget\n";
  for (const TranslationUnit* u : rows) {
    CheckField(u->system, "system");
    CheckField(u->segment.doc_id, "doc_id");
    CheckField(u->segment.seg_id, "seg_id");
    CheckField(u->source, "source");
    CheckField(u->target, "target");
    out += u->system + "\t" + u->segment.doc_id + "\t" + u->segment.seg_id + "\t" +
           u->source + "\t" + u->target + "\n";
  }
  return out;
}

std::vector<MetricScore> ParseMetricScoresTsv(std::string_view bytes) {
  TsvReader tsv(bytes, "metric scores");
  const size_t c_system = tsv.Column("system");
  const size_t c_doc_id = tsv.Column("doc_id");
  const size_t c_seg_id = tsv.Column("seg_id");
  const size_t c_score = tsv.Column("score");
  std::vector<MetricScore> out;
  for (const TsvRow& row : tsv.rows()) {
    const auto& f = row.fields;
    const std::string text = text::Trim(f[c_score]);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw Error("E_BAD_VALUE", "score is not a number", RowDetail(row.line));
    }
    out.push_back(MetricScore{std::string(f[c_system]),
                              {std::string(f[c_doc_id]), std::string(f[c_seg_id])}, value});
  }
  return out;
}

}  // namespace sxseval
