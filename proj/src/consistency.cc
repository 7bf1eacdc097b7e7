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

#include "sxseval/consistency.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>

#include "sxseval/error.h"
#include "sxseval/parallel.h"
#include "sxseval/text.h"

namespace sxseval {
namespace {

struct Block {
  size_t i = 0;
  size_t j = 0;
  size_t k = 0;
};

// Longest common run within the window; earliest in a, then earliest in b.
Block LongestMatch(const std::vector<int>& a, const std::vector<int>& b, size_t alo, size_t ahi,
                   size_t blo, size_t bhi) {
  Block best{alo, blo, 0};
  std::vector<size_t> prev(bhi - blo + 1, 0);
  std::vector<size_t> cur(bhi - blo + 1, 0);
  for (size_t i = alo; i < ahi; ++i) {
    for (size_t j = blo; j < bhi; ++j) {
      const size_t col = j - blo + 1;
      cur[col] = a[i] == b[j] ? prev[col - 1] + 1 : 0;
      if (cur[col] > best.k) best = {i + 1 - cur[col], j + 1 - cur[col], cur[col]};
    }
    std::swap(prev, cur);
  }
  return best;
}

std::vector<Block> MatchingBlocks(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<Block> blocks;
  std::deque<std::tuple<size_t, size_t, size_t, size_t>> queue{{0, a.size(), 0, b.size()}};
  while (!queue.empty()) {
    const auto [alo, ahi, blo, bhi] = queue.back();
    queue.pop_back();
    const Block m = LongestMatch(a, b, alo, ahi, blo, bhi);
    if (m.k == 0) continue;
    blocks.push_back(m);
    if (alo < m.i && blo < m.j) queue.emplace_back(alo, m.i, blo, m.j);
    if (m.i + m.k < ahi && m.j + m.k < bhi) queue.emplace_back(m.i + m.k, ahi, m.j + m.k, bhi);
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& x, const Block& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
  std::vector<Block> merged;
  for (const Block& blk : blocks) {
    if (!merged.empty() && merged.back().i + merged.back().k == blk.i &&
        merged.back().j + merged.back().k == blk.j) {
      merged.back().k += blk.k;
    } else {
      merged.push_back(blk);
    }
  }
  merged.push_back({a.size(), b.size(), 0});
  return merged;
}

using SpanKey = std::vector<size_t>;  // covered token indices in A's numbering

struct Attr {
  ErrorCategory category;
  Severity severity;
};

// Token indices the span overlaps.
std::vector<size_t> Covered(const std::vector<text::Token>& tokens, const ErrorSpan& e) {
  std::vector<size_t> out;
  for (size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].begin < e.end && e.start < tokens[t].end) out.push_back(t);
  }
  return out;
}

// The span's covered tokens renumbered into A's token positions, or
// nullopt when the span is not a potential common error.
std::optional<SpanKey> KeyOf(const std::vector<size_t>& covered,
                             const std::vector<std::optional<size_t>>& to_a, bool lenient) {
  SpanKey key;
  for (size_t t : covered) {
    if (to_a[t]) {
      key.push_back(*to_a[t]);
    } else if (!lenient) {
      return std::nullopt;
    }
  }
  if (key.empty()) return std::nullopt;
  std::sort(key.begin(), key.end());
  return key;
}

int64_t MinMultiset(std::vector<int64_t> a, std::vector<int64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  int64_t n = 0;
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

int64_t CategoryCode(const ErrorCategory& c, bool subcategory) {
  int64_t code = static_cast<int64_t>(c.category) * 64;
  if (subcategory && c.subcategory) code += 1 + static_cast<int64_t>(*c.subcategory);
  return code;
}

const MqmAnnotation* Lookup(const ProjectIndex& index, Setting setting,
                            const std::string& annotator, const std::string& system,
                            const std::string& partner, const SegmentRef& seg) {
  return index.Annotation(setting, annotator, system, seg, partner);
}

std::string PrimaryPartner(const Project& project, const std::string& system) {
  std::string partner;
  for (const SystemPair& p : project.designated_pairs) {
    if (p.first == system) partner = p.second;
    if (p.second == system) partner = p.first;
  }
  return partner;
}

}  // namespace

std::string_view Name(OpKind kind) {
  switch (kind) {
    case OpKind::kEqual: return "equal";
    case OpKind::kReplace: return "replace";
    case OpKind::kDelete: return "delete";
    case OpKind::kInsert: return "insert";
  }
  return "?";
}

std::string_view Name(ItcCriterion criterion) {
  switch (criterion) {
    case ItcCriterion::kSpan: return "span";
    case ItcCriterion::kSpanCat: return "span+cat";
    case ItcCriterion::kSpanSev: return "span+sev";
    case ItcCriterion::kSpanCatSev: return "span+cat+sev";
  }
  return "?";
}

std::string_view Name(PairScope scope) {
  return scope == PairScope::kDesignated ? "designated" : "non-designated";
}

std::vector<AlignOp> AlignTokens(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  std::unordered_map<std::string, int> ids;
  auto encode = [&ids](const std::vector<std::string>& tokens) {
    std::vector<int> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
      out.push_back(ids.emplace(t, static_cast<int>(ids.size())).first->second);
    }
    return out;
  };
  const std::vector<int> ea = encode(a);
  const std::vector<int> eb = encode(b);

  std::vector<AlignOp> ops;
  size_t i = 0;
  size_t j = 0;
  for (const Block& blk : MatchingBlocks(ea, eb)) {
    if (i < blk.i && j < blk.j) {
      ops.push_back({OpKind::kReplace, i, blk.i, j, blk.j});
    } else if (i < blk.i) {
      ops.push_back({OpKind::kDelete, i, blk.i, j, blk.j});
    } else if (j < blk.j) {
      ops.push_back({OpKind::kInsert, i, blk.i, j, blk.j});
    }
    i = blk.i + blk.k;
    j = blk.j + blk.k;
    if (blk.k > 0) ops.push_back({OpKind::kEqual, blk.i, i, blk.j, j});
  }
  return ops;
}

std::optional<double> ItcCounts::Percentage(ItcCriterion c) const {
  if (potential == 0) return std::nullopt;
  return static_cast<double>(Matched(c)) / static_cast<double>(potential);
}

ItcCounts& ItcCounts::operator+=(const ItcCounts& other) {
  potential += other.potential;
  for (size_t c = 0; c < matched.size(); ++c) matched[c] += other.matched[c];
  return *this;
}

ItcCounts CompareSegment(std::string_view target_a, const std::vector<ErrorSpan>& errors_a,
                         std::string_view target_b, const std::vector<ErrorSpan>& errors_b,
                         const ItcOptions& options) {
  const auto tokens_a = text::Tokenize(target_a);
  const auto tokens_b = text::Tokenize(target_b);
  std::vector<std::string> strings_a;
  std::vector<std::string> strings_b;
  for (const auto& t : tokens_a) strings_a.push_back(t.text);
  for (const auto& t : tokens_b) strings_b.push_back(t.text);

  std::vector<std::optional<size_t>> a_to_a(tokens_a.size());
  std::vector<std::optional<size_t>> b_to_a(tokens_b.size());
  for (const AlignOp& op : AlignTokens(strings_a, strings_b)) {
    if (op.kind != OpKind::kEqual) continue;
    for (size_t k = 0; k < op.a_end - op.a_begin; ++k) {
      a_to_a[op.a_begin + k] = op.a_begin + k;
      b_to_a[op.b_begin + k] = op.a_begin + k;
    }
  }

  auto collect = [&](const std::vector<text::Token>& tokens,
                     const std::vector<ErrorSpan>& errors,
                     const std::vector<std::optional<size_t>>& to_a) {
    std::map<SpanKey, std::vector<Attr>> out;
    for (const ErrorSpan& e : errors) {
      if (e.side != Side::kTarget || e.unspecified_span) continue;
      if (auto key = KeyOf(Covered(tokens, e), to_a, options.lenient_overlap)) {
        out[*key].push_back({e.category, e.severity});
      }
    }
    return out;
  };
  const auto pot_a = collect(tokens_a, errors_a, a_to_a);
  const auto pot_b = collect(tokens_b, errors_b, b_to_a);

  ItcCounts counts;
  int64_t n_a = 0;
  int64_t n_b = 0;
  for (const auto& [key, attrs] : pot_a) n_a += static_cast<int64_t>(attrs.size());
  for (const auto& [key, attrs] : pot_b) n_b += static_cast<int64_t>(attrs.size());
  int64_t paired = 0;
  for (const auto& [key, attrs_a] : pot_a) {
    auto it = pot_b.find(key);
    if (it == pot_b.end()) continue;
    const auto& attrs_b = it->second;
    paired += static_cast<int64_t>(std::min(attrs_a.size(), attrs_b.size()));
    auto codes = [&](const std::vector<Attr>& attrs, bool cat, bool sev) {
      std::vector<int64_t> out;
      for (const Attr& x : attrs) {
        out.push_back((cat ? CategoryCode(x.category, options.subcategory_match) : 0) * 2 +
                      (sev ? static_cast<int64_t>(x.severity) : 0));
      }
      return out;
    };
    for (ItcCriterion c : kAllCriteria) {
      const bool cat = c == ItcCriterion::kSpanCat || c == ItcCriterion::kSpanCatSev;
      const bool sev = c == ItcCriterion::kSpanSev || c == ItcCriterion::kSpanCatSev;
      counts.matched[static_cast<size_t>(c)] +=
          MinMultiset(codes(attrs_a, cat, sev), codes(attrs_b, cat, sev));
    }
  }
  counts.potential = n_a + n_b - paired;
  return counts;
}

namespace {

ItcResult ItcIndexed(const ProjectIndex& index, Setting setting, const std::string& annotator,
                     const std::string& system_a, const std::string& system_b,
                     const ItcOptions& options) {
  if (setting == Setting::kSxsRr) {
    throw Error("E_SETTING", "consistency needs error annotations");
  }
  const Project& project = index.project();
  std::string partner_a;
  std::string partner_b;
  if (setting == Setting::kSxsMqm) {
    const bool designated = std::any_of(
        project.designated_pairs.begin(), project.designated_pairs.end(),
        [&](const SystemPair& p) { return p.SameSystems(system_a, system_b); });
    partner_a = designated ? system_b : PrimaryPartner(project, system_a);
    partner_b = designated ? system_a : PrimaryPartner(project, system_b);
  }
  ItcResult result{annotator, system_a, system_b, 0, {}};
  for (const SegmentRef& seg : index.segments()) {
    const MqmAnnotation* x = Lookup(index, setting, annotator, system_a, partner_a, seg);
    const MqmAnnotation* y = Lookup(index, setting, annotator, system_b, partner_b, seg);
    const TranslationUnit* ux = index.Unit(system_a, seg);
    const TranslationUnit* uy = index.Unit(system_b, seg);
    if (!x || !y || !ux || !uy) continue;
    ++result.segments;
    result.counts += CompareSegment(ux->target, x->errors, uy->target, y->errors, options);
  }
  if (result.segments == 0) {
    throw Error("E_NO_OVERLAP", "annotator has no common segments for the pair",
                annotator + " " + system_a + "~" + system_b);
  }
  return result;
}

}  // namespace

ItcResult Itc(const Project& project, Setting setting, const std::string& annotator,
              const std::string& system_a, const std::string& system_b,
              const ItcOptions& options) {
  return ItcIndexed(ProjectIndex(project), setting, annotator, system_a, system_b, options);
}

std::vector<SystemPair> PairsInScope(const Project& project, Setting /*setting*/,
                                     PairScope scope) {
  if (scope == PairScope::kDesignated) return project.designated_pairs;
  std::set<std::string> systems;
  for (const SystemPair& p : project.designated_pairs) {
    systems.insert(p.first);
    systems.insert(p.second);
  }
  std::vector<SystemPair> out;
  for (auto a = systems.begin(); a != systems.end(); ++a) {
    for (auto b = std::next(a); b != systems.end(); ++b) {
      const bool designated = std::any_of(
          project.designated_pairs.begin(), project.designated_pairs.end(),
          [&](const SystemPair& p) { return p.SameSystems(*a, *b); });
      if (!designated) out.push_back({*a, *b, ""});
    }
  }
  return out;
}

std::vector<ItcRow> ItcReport(const Project& project, Setting setting, PairScope scope,
                              const ItcOptions& options) {
  const ProjectIndex index(project);
  const std::vector<std::string>& annotators = index.annotators_of(setting);
  const std::vector<SystemPair> pairs = PairsInScope(project, setting, scope);
  std::vector<ItcCounts> pooled(annotators.size());
  ParallelFor(annotators.size(), [&](size_t i) {
    for (const SystemPair& p : pairs) {
      try {
        pooled[i] += ItcIndexed(index, setting, annotators[i], p.first, p.second, options).counts;
      } catch (const Error& e) {
        if (e.code() != "E_NO_OVERLAP") throw;
      }
    }
  });
  std::vector<ItcRow> rows;
  for (ItcCriterion c : kAllCriteria) {
    ItcRow row{scope, setting, c, std::nullopt, 0, static_cast<int64_t>(pairs.size())};
    double sum = 0;
    for (const ItcCounts& counts : pooled) {
      if (auto pct = counts.Percentage(c)) {
        sum += *pct;
        ++row.n_annotators;
      }
    }
    if (row.n_annotators > 0) row.mean_percentage = sum / static_cast<double>(row.n_annotators);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sxseval
