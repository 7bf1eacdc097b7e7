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

#include "sxseval/agreement.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "sxseval/error.h"
#include "sxseval/text.h"

namespace sxseval {
namespace {

using CellKey = std::tuple<std::string, std::string, SegmentRef, std::string>;

std::map<CellKey, double> AnnotatorScores(const Project& project, Setting setting,
                                          const LabelOptions& options) {
  std::vector<ScoreCell> cells = ComputeCells(project, setting);
  const bool use_z = options.use_z && !cells.empty();
  if (use_z && options.grouping == ZGrouping::kPooledMqmSettings) {
    const Setting other = setting == Setting::kMqm ? Setting::kSxsMqm : Setting::kMqm;
    const size_t n = cells.size();
    for (ScoreCell& c : ComputeCells(project, other)) cells.push_back(std::move(c));
    ZNormalize(cells, options.grouping);
    cells.resize(n);
  } else if (use_z) {
    ZNormalize(cells, options.grouping);
  }
  std::map<CellKey, double> out;
  for (const ScoreCell& c : cells) {
    out.emplace(CellKey{c.annotator, c.system, c.segment, c.partner}, use_z ? *c.z : c.raw);
  }
  return out;
}

std::optional<double> Find(const std::map<CellKey, double>& scores, const std::string& annotator,
                           const std::string& system, const SegmentRef& segment,
                           const std::string& partner) {
  auto it = scores.find(CellKey{annotator, system, segment, partner});
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

AgreementResult AlphaOrThrowless(const LabelMatrix& m, std::optional<double>& alpha) {
  try {
    AgreementResult r = KrippendorffAlpha(m);
    alpha = r.alpha;
    return r;
  } catch (const Error& e) {
    if (e.code() != "E_DEGENERATE") throw;
    alpha.reset();
    AgreementResult r;
    for (const auto& row : m.labels) {
      const auto present = std::count_if(row.begin(), row.end(),
                                         [](const auto& l) { return l.has_value(); });
      if (present >= 2) {
        ++r.n_units;
        r.n_labels += present;
      }
    }
    return r;
  }
}

}  // namespace

ComparisonLabel LabelFromScores(double score_a, double score_b) {
  if (score_a < score_b) return ComparisonLabel::kABetter;
  if (score_a == score_b) return ComparisonLabel::kTie;
  return ComparisonLabel::kBBetter;
}

ComparisonLabel LabelFromRr(RrValue value) {
  switch (value) {
    case RrValue::kAMuchBetter:
    case RrValue::kABetter: return ComparisonLabel::kABetter;
    case RrValue::kSame: return ComparisonLabel::kTie;
    case RrValue::kBBetter:
    case RrValue::kBMuchBetter: return ComparisonLabel::kBBetter;
  }
  return ComparisonLabel::kTie;
}

int64_t LabelMatrix::LabelCount() const {
  int64_t n = 0;
  for (const auto& row : labels) {
    n += std::count_if(row.begin(), row.end(), [](const auto& l) { return l.has_value(); });
  }
  return n;
}

LabelMatrix BuildLabelMatrix(const Project& project, Setting setting,
                             const LabelOptions& options) {
  if (project.designated_pairs.empty()) {
    throw Error("E_NO_PAIRS", "project has no designated system pairs");
  }
  const ProjectIndex index(project);
  LabelMatrix m;
  m.annotators = index.annotators_of(setting);
  std::map<CellKey, double> scores;
  if (setting != Setting::kSxsRr) scores = AnnotatorScores(project, setting, options);

  for (const SegmentRef& seg : index.segments()) {
    for (const SystemPair& pair : project.designated_pairs) {
      std::vector<std::optional<ComparisonLabel>> row(m.annotators.size());
      bool any = false;
      for (size_t i = 0; i < m.annotators.size(); ++i) {
        const std::string& who = m.annotators[i];
        if (setting == Setting::kSxsRr) {
          if (const RrJudgment* j = index.Judgment(who, seg, pair.first, pair.second)) {
            const ComparisonLabel l = LabelFromRr(j->value);
            row[i] = j->system_a == pair.first ? l : Flip(l);
          }
        } else {
          const bool sxs = setting == Setting::kSxsMqm;
          const auto a = Find(scores, who, pair.first, seg, sxs ? pair.second : "");
          const auto b = Find(scores, who, pair.second, seg, sxs ? pair.first : "");
          if (a && b) row[i] = LabelFromScores(*a, *b);
        }
        any = any || row[i].has_value();
      }
      if (!any) continue;
      m.units.push_back({seg, pair.first, pair.second, pair.group});
      m.labels.push_back(std::move(row));
    }
  }
  return m;
}

LabelMatrix FilterUnits(const LabelMatrix& matrix,
                        const std::function<bool(const LabelUnit&)>& keep) {
  LabelMatrix out;
  out.annotators = matrix.annotators;
  for (size_t u = 0; u < matrix.units.size(); ++u) {
    if (!keep(matrix.units[u])) continue;
    out.units.push_back(matrix.units[u]);
    out.labels.push_back(matrix.labels[u]);
  }
  return out;
}

AgreementResult NominalAlpha(const std::vector<std::vector<int>>& units) {
  // Coincidences accumulate per unit from value counts: o[c][k] gains
  // m_c * m_k / (m_u - 1) for c != k and m_c * (m_c - 1) / (m_u - 1) on
  // the diagonal.
  std::map<int, int> index;
  for (const auto& unit : units) {
    if (unit.size() < 2) continue;
    for (int v : unit) index.emplace(v, 0);
  }
  int next = 0;
  for (auto& [value, i] : index) i = next++;
  const size_t k = index.size();
  std::vector<double> o(k * k, 0.0);
  AgreementResult result;
  for (const auto& unit : units) {
    if (unit.size() < 2) continue;
    std::vector<int> counts(k, 0);
    for (int v : unit) ++counts[static_cast<size_t>(index[v])];
    const double denom = static_cast<double>(unit.size() - 1);
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (size_t d = 0; d < k; ++d) {
        const double pairs = c == d ? counts[c] * (counts[c] - 1.0) : counts[c] * 1.0 * counts[d];
        o[c * k + d] += pairs / denom;
      }
    }
    ++result.n_units;
    result.n_labels += static_cast<int64_t>(unit.size());
  }
  if (result.n_labels < 2) throw Error("E_DEGENERATE", "fewer than two pairable labels");

  std::vector<double> n_c(k, 0.0);
  double n = 0;
  for (size_t c = 0; c < k; ++c) {
    for (size_t d = 0; d < k; ++d) n_c[c] += o[c * k + d];
    n += n_c[c];
  }
  double observed = 0;
  double expected = 0;
  for (size_t c = 0; c < k; ++c) {
    for (size_t d = 0; d < k; ++d) {
      if (c == d) continue;
      observed += o[c * k + d];
      expected += n_c[c] * n_c[d];
    }
  }
  expected /= (n - 1);
  if (expected <= 0) {
    throw Error("E_DEGENERATE", "expected disagreement is zero",
                "only one label category present");
  }
  result.alpha = 1.0 - observed / expected;
  return result;
}

AgreementResult KrippendorffAlpha(const LabelMatrix& matrix) {
  std::vector<std::vector<int>> units;
  units.reserve(matrix.labels.size());
  for (const auto& row : matrix.labels) {
    std::vector<int> values;
    for (const auto& l : row) {
      if (l) values.push_back(static_cast<int>(*l));
    }
    units.push_back(std::move(values));
  }
  return NominalAlpha(units);
}

double TieRate(const LabelMatrix& matrix) {
  int64_t present = 0;
  int64_t ties = 0;
  for (const auto& row : matrix.labels) {
    for (const auto& l : row) {
      if (!l) continue;
      ++present;
      if (*l == ComparisonLabel::kTie) ++ties;
    }
  }
  if (present == 0) throw Error("E_EMPTY", "no labels");
  return static_cast<double>(ties) / static_cast<double>(present);
}

LengthRule DefaultLengthRule(const Project& project, const std::string& reference_system) {
  const std::string lp = text::ToLower(project.language_pair);
  if (lp.rfind("en", 0) == 0 && (lp.size() == 2 || lp[2] == '-' || lp[2] == '_')) {
    return {LengthSide::kSource, ""};
  }
  return {LengthSide::kReferenceTarget, reference_system};
}

std::vector<std::vector<size_t>> SplitIntoBuckets(const std::vector<size_t>& counts, int k) {
  if (k < 1) throw Error("E_BAD_ARGUMENT", "bucket count must be positive");
  if (counts.empty()) throw Error("E_EMPTY", "no segments to bucket");
  std::vector<size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return counts[a] < counts[b]; });
  const size_t groups = static_cast<size_t>(k);
  const size_t base = order.size() / groups;
  const size_t extra = order.size() % groups;
  std::vector<std::vector<size_t>> out(groups);
  size_t pos = 0;
  for (size_t g = 0; g < groups; ++g) {
    const size_t size = base + (g < extra ? 1 : 0);
    out[g].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                  order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return out;
}

std::vector<std::vector<SegmentRef>> LengthBuckets(const Project& project, int k,
                                                   const LengthRule& rule) {
  const ProjectIndex index(project);
  std::map<SegmentRef, const TranslationUnit*> any_unit;
  for (const TranslationUnit& u : project.units) any_unit.emplace(u.segment, &u);
  std::vector<SegmentRef> segments;
  std::vector<size_t> counts;
  for (const SegmentRef& seg : index.segments()) {
    const TranslationUnit* unit = nullptr;
    if (rule.side == LengthSide::kSource) {
      auto it = any_unit.find(seg);
      if (it != any_unit.end()) unit = it->second;
    } else {
      unit = index.Unit(rule.reference_system, seg);
      if (unit == nullptr) {
        throw Error("E_NO_REFERENCE", "reference translation missing",
                    rule.reference_system + " " + seg.doc_id + "/" + seg.seg_id);
      }
    }
    if (unit == nullptr) continue;
    segments.push_back(seg);
    counts.push_back(
        text::Tokenize(rule.side == LengthSide::kSource ? unit->source : unit->target).size());
  }
  std::vector<std::vector<SegmentRef>> out;
  for (const auto& group : SplitIntoBuckets(counts, k)) {
    std::vector<SegmentRef> refs;
    for (size_t i : group) refs.push_back(segments[i]);
    out.push_back(std::move(refs));
  }
  return out;
}

std::vector<AgreementRow> AgreementReport(const Project& project,
                                          const AgreementReportOptions& options) {
  std::vector<std::vector<SegmentRef>> buckets;
  if (options.buckets > 0) {
    try {
      buckets = LengthBuckets(project, options.buckets,
                              options.length_rule.value_or(DefaultLengthRule(project)));
    } catch (const Error& e) {
      // The default rule needs a reference system that may not exist.
      if (options.length_rule || e.code() != "E_NO_REFERENCE") throw;
    }
  }
  std::vector<std::string> groups;
  for (const SystemPair& p : project.designated_pairs) {
    if (!p.group.empty() && std::find(groups.begin(), groups.end(), p.group) == groups.end()) {
      groups.push_back(p.group);
    }
  }

  std::vector<AgreementRow> rows;
  for (Setting setting : options.settings) {
    const LabelMatrix all = BuildLabelMatrix(project, setting, options.labels);
    if (all.units.empty()) continue;
    auto add = [&](const std::string& scope, const LabelMatrix& m) {
      AgreementRow row;
      row.setting = setting;
      row.scope = scope;
      const AgreementResult r = AlphaOrThrowless(m, row.alpha);
      row.n_units = r.n_units;
      row.n_labels = r.n_labels;
      if (m.LabelCount() > 0) row.tie_rate = TieRate(m);
      rows.push_back(std::move(row));
    };
    add("all", all);
    for (const std::string& g : groups) {
      add(g, FilterUnits(all, [&](const LabelUnit& u) { return u.group == g; }));
    }
    for (size_t b = 0; b < buckets.size(); ++b) {
      const std::set<SegmentRef> members(buckets[b].begin(), buckets[b].end());
      add("bucket-" + std::to_string(b + 1),
          FilterUnits(all, [&](const LabelUnit& u) { return members.contains(u.segment); }));
    }
  }
  return rows;
}

}  // namespace sxseval
