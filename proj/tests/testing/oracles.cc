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

#include "testing/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace sxseval::testing {

std::optional<double> BruteAlpha(const std::vector<std::vector<int>>& units) {
  std::map<std::pair<int, int>, double> o;
  for (const auto& u : units) {
    if (u.size() < 2) continue;
    for (size_t i = 0; i < u.size(); ++i) {
      for (size_t j = 0; j < u.size(); ++j) {
        if (i != j) o[{u[i], u[j]}] += 1.0 / static_cast<double>(u.size() - 1);
      }
    }
  }
  std::map<int, double> marginal;
  double n = 0;
  for (const auto& [ck, w] : o) {
    marginal[ck.first] += w;
    n += w;
  }
  if (n < 2) return std::nullopt;
  double observed = 0;
  for (const auto& [ck, w] : o) {
    if (ck.first != ck.second) observed += w;
  }
  double expected = 0;
  for (const auto& [c, nc] : marginal) {
    for (const auto& [k, nk] : marginal) {
      if (c != k) expected += nc * nk;
    }
  }
  expected /= (n - 1);
  if (expected == 0) return std::nullopt;
  return 1.0 - observed / expected;
}

PraResult BrutePra(const UnitLabels& alpha, const UnitLabels& beta) {
  PraResult r;
  for (const auto& [key, x] : alpha) {
    const ComparisonLabel y = beta.at(key);
    const bool tx = x == ComparisonLabel::kTie;
    const bool ty = y == ComparisonLabel::kTie;
    if (tx && ty) {
      ++r.counts.tied_both;
    } else if (tx) {
      ++r.counts.tied_alpha_only;
    } else if (ty) {
      ++r.counts.tied_beta_only;
    } else if (x == y) {
      ++r.counts.concordant;
    } else {
      ++r.counts.discordant;
    }
  }
  const double total = static_cast<double>(r.counts.Total());
  r.value = static_cast<double>(r.counts.concordant + r.counts.tied_both) / total;
  return r;
}

namespace {

struct Run {
  size_t i, j, k;
};

void Blocks(const std::vector<std::string>& a, const std::vector<std::string>& b, size_t alo,
            size_t ahi, size_t blo, size_t bhi, std::vector<Run>& out) {
  Run best{alo, blo, 0};
  for (size_t i = alo; i < ahi; ++i) {
    for (size_t j = blo; j < bhi; ++j) {
      size_t k = 0;
      while (i + k < ahi && j + k < bhi && a[i + k] == b[j + k]) ++k;
      if (k > best.k) best = {i, j, k};
    }
  }
  if (best.k == 0) return;
  Blocks(a, b, alo, best.i, blo, best.j, out);
  out.push_back(best);
  Blocks(a, b, best.i + best.k, ahi, best.j + best.k, bhi, out);
}

// Byte ranges of space-separated tokens.
std::vector<std::pair<size_t, size_t>> Split(const std::string& s) {
  std::vector<std::pair<size_t, size_t>> offsets;
  size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos == s.size()) break;
    size_t end = pos;
    while (end < s.size() && s[end] != ' ') ++end;
    offsets.emplace_back(pos, end);
    pos = end;
  }
  return offsets;
}

}  // namespace

std::vector<AlignOp> BruteOpcodes(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  std::vector<Run> runs;
  Blocks(a, b, 0, a.size(), 0, b.size(), runs);
  std::vector<Run> merged;
  for (const Run& r : runs) {
    if (!merged.empty() && merged.back().i + merged.back().k == r.i &&
        merged.back().j + merged.back().k == r.j) {
      merged.back().k += r.k;
    } else {
      merged.push_back(r);
    }
  }
  merged.push_back({a.size(), b.size(), 0});
  std::vector<AlignOp> ops;
  size_t i = 0;
  size_t j = 0;
  for (const Run& r : merged) {
    OpKind kind = OpKind::kEqual;
    if (i < r.i && j < r.j) {
      kind = OpKind::kReplace;
    } else if (i < r.i) {
      kind = OpKind::kDelete;
    } else if (j < r.j) {
      kind = OpKind::kInsert;
    }
    if (kind != OpKind::kEqual) ops.push_back({kind, i, r.i, j, r.j});
    if (r.k > 0) ops.push_back({OpKind::kEqual, r.i, r.i + r.k, r.j, r.j + r.k});
    i = r.i + r.k;
    j = r.j + r.k;
  }
  return ops;
}

ItcCounts ExhaustiveItc(const std::string& target_a, const std::vector<ErrorSpan>& errors_a,
                        const std::string& target_b, const std::vector<ErrorSpan>& errors_b,
                        bool lenient) {
  const auto off_a = Split(target_a);
  const auto off_b = Split(target_b);
  std::vector<std::string> tok_a;
  std::vector<std::string> tok_b;
  for (auto [s, e] : off_a) tok_a.push_back(target_a.substr(s, e - s));
  for (auto [s, e] : off_b) tok_b.push_back(target_b.substr(s, e - s));

  // Token index in B -> aligned index in A (or -1); A maps to itself.
  std::vector<long> a_map(tok_a.size(), -1);
  std::vector<long> b_map(tok_b.size(), -1);
  for (const AlignOp& op : BruteOpcodes(tok_a, tok_b)) {
    if (op.kind != OpKind::kEqual) continue;
    for (size_t k = 0; k < op.a_end - op.a_begin; ++k) {
      a_map[op.a_begin + k] = static_cast<long>(op.a_begin + k);
      b_map[op.b_begin + k] = static_cast<long>(op.a_begin + k);
    }
  }

  struct Potential {
    std::vector<long> key;
    const ErrorSpan* error;
  };
  auto potentials = [&](const std::vector<ErrorSpan>& errors,
                        const std::vector<std::pair<size_t, size_t>>& offsets,
                        const std::vector<long>& map) {
    std::vector<Potential> out;
    for (const ErrorSpan& e : errors) {
      if (e.side != Side::kTarget || e.unspecified_span) continue;
      std::vector<long> key;
      bool ok = true;
      for (size_t t = 0; t < offsets.size(); ++t) {
        const bool overlaps = offsets[t].first < e.end && e.start < offsets[t].second;
        if (!overlaps) continue;
        if (map[t] < 0) {
          ok = ok && lenient;
        } else {
          key.push_back(map[t]);
        }
      }
      std::sort(key.begin(), key.end());
      if (ok && !key.empty()) out.push_back({key, &e});
    }
    return out;
  };
  const auto pa = potentials(errors_a, off_a, a_map);
  const auto pb = potentials(errors_b, off_b, b_map);

  auto max_matching = [&](const std::function<bool(const ErrorSpan&, const ErrorSpan&)>& same) {
    std::vector<bool> used(pb.size(), false);
    std::function<int64_t(size_t)> best = [&](size_t i) -> int64_t {
      if (i == pa.size()) return 0;
      int64_t result = best(i + 1);
      for (size_t j = 0; j < pb.size(); ++j) {
        if (used[j] || pa[i].key != pb[j].key || !same(*pa[i].error, *pb[j].error)) continue;
        used[j] = true;
        result = std::max(result, 1 + best(i + 1));
        used[j] = false;
      }
      return result;
    };
    return best(0);
  };

  ItcCounts c;
  auto cat = [](const ErrorSpan& x, const ErrorSpan& y) {
    return x.category.category == y.category.category;
  };
  auto sev = [](const ErrorSpan& x, const ErrorSpan& y) { return x.severity == y.severity; };
  c.matched[0] = max_matching([](const ErrorSpan&, const ErrorSpan&) { return true; });
  c.matched[1] = max_matching(cat);
  c.matched[2] = max_matching(sev);
  c.matched[3] = max_matching(
      [&](const ErrorSpan& x, const ErrorSpan& y) { return cat(x, y) && sev(x, y); });
  c.potential = static_cast<int64_t>(pa.size() + pb.size()) - c.matched[0];
  return c;
}

double ExhaustivePermutationP(const std::vector<double>& a, const std::vector<double>& b) {
  const size_t n = a.size();
  double observed = 0;
  double magnitude = 0;
  for (size_t i = 0; i < n; ++i) {
    observed += a[i] - b[i];
    magnitude += std::fabs(a[i] - b[i]);
  }
  observed = std::fabs(observed);
  int64_t hits = 0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    double sum = 0;
    for (size_t i = 0; i < n; ++i) sum += ((mask >> i) & 1) ? b[i] - a[i] : a[i] - b[i];
    if (std::fabs(sum) >= observed - 1e-9 * std::max(1.0, magnitude)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(uint64_t{1} << n);
}

}  // namespace sxseval::testing
