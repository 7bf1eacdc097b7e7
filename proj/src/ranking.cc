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

#include "sxseval/ranking.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <unordered_map>

#include "sxseval/agreement.h"
#include "sxseval/error.h"
#include "sxseval/parallel.h"
#include "sxseval/text.h"

namespace sxseval {
namespace {

constexpr int64_t kTrialsPerBlock = 256;

bool HasData(const Project& project, Setting setting) {
  if (setting == Setting::kSxsRr) return !project.rr.empty();
  return std::any_of(project.mqm.begin(), project.mqm.end(),
                     [&](const MqmAnnotation& a) { return a.setting == setting; });
}

std::vector<std::string> BleuTokens(const std::string& s) {
  return text::TokenStrings(text::IsNfc(s) ? s : text::ToNfc(s));
}

std::unordered_map<std::string, int64_t> NgramCounts(const std::vector<std::string>& tokens,
                                                     size_t n) {
  std::unordered_map<std::string, int64_t> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (size_t k = 0; k < n; ++k) {
      key += tokens[i + k];
      key.push_back('\x1f');
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

PraResult Pra(const UnitLabels& alpha, const UnitLabels& beta) {
  if (alpha.size() != beta.size() ||
      !std::equal(alpha.begin(), alpha.end(), beta.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw Error("E_UNIT_MISMATCH", "settings label different units",
                std::to_string(alpha.size()) + " vs " + std::to_string(beta.size()));
  }
  if (alpha.empty()) throw Error("E_EMPTY", "no units to compare");
  PraResult r;
  for (auto a = alpha.begin(), b = beta.begin(); a != alpha.end(); ++a, ++b) {
    const bool tie_a = a->second == ComparisonLabel::kTie;
    const bool tie_b = b->second == ComparisonLabel::kTie;
    if (tie_a && tie_b) {
      ++r.counts.tied_both;
    } else if (tie_a) {
      ++r.counts.tied_alpha_only;
    } else if (tie_b) {
      ++r.counts.tied_beta_only;
    } else if (a->second == b->second) {
      ++r.counts.concordant;
    } else {
      ++r.counts.discordant;
    }
  }
  r.value = static_cast<double>(r.counts.concordant + r.counts.tied_both) /
            static_cast<double>(r.counts.Total());
  return r;
}

UnitLabels SegmentLabels(const Project& project, Setting setting,
                         const SegmentLabelOptions& options) {
  UnitLabels out;
  for (const SystemPair& pair : project.designated_pairs) {
    ScoreTable table;
    try {
      table = BuildScoreTable(project, setting, {options.use_z, options.grouping, pair});
    } catch (const Error& e) {
      if (e.code() == "E_NO_ANNOTATIONS") continue;
      throw;
    }
    for (const SegmentRef& seg : table.SegmentsOf(pair.first)) {
      const auto b = table.SegmentScore(pair.second, seg);
      if (!b) continue;
      out.emplace(UnitKey{seg, pair.first, pair.second},
                  LabelFromScores(*table.SegmentScore(pair.first, seg), *b));
    }
  }
  return out;
}

std::vector<PraRow> PraReport(const Project& project, const SegmentLabelOptions& options) {
  std::map<Setting, UnitLabels> labels;
  for (Setting s : kAllSettings) {
    if (HasData(project, s)) labels.emplace(s, SegmentLabels(project, s, options));
  }
  std::vector<PraRow> rows;
  for (auto x = labels.begin(); x != labels.end(); ++x) {
    for (auto y = std::next(x); y != labels.end(); ++y) {
      UnitLabels a;
      UnitLabels b;
      int64_t dropped = 0;
      for (const auto& [key, label] : x->second) {
        auto it = y->second.find(key);
        if (it == y->second.end()) {
          ++dropped;
          continue;
        }
        a.emplace(key, label);
        b.emplace(key, it->second);
      }
      dropped += static_cast<int64_t>(y->second.size() - b.size());
      if (a.empty()) continue;
      rows.push_back({x->first, y->first, Pra(a, b), dropped});
    }
  }
  return rows;
}

double PermutationTest(const std::vector<double>& a, const std::vector<double>& b,
                       int64_t trials, uint64_t seed) {
  if (a.size() != b.size()) {
    throw Error("E_LENGTH_MISMATCH", "score vectors differ in length",
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.size() < 2) throw Error("E_TOO_SHORT", "need at least two paired scores");
  if (trials < 1) throw Error("E_BAD_ARGUMENT", "trials must be positive");

  const size_t n = a.size();
  std::vector<double> d(n);
  double observed = 0;
  double magnitude = 0;
  for (size_t i = 0; i < n; ++i) {
    d[i] = a[i] - b[i];
    observed += d[i];
    magnitude += std::fabs(d[i]);
  }
  observed = std::fabs(observed);
  // Sums of the same terms in another order may differ in the last bits.
  const double threshold = observed - 1e-9 * std::max(1.0, magnitude);

  const int64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<int64_t> hits(static_cast<size_t>(blocks), 0);
  ParallelFor(static_cast<size_t>(blocks), [&](size_t block) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32)};
    std::mt19937_64 gen(seq);
    const int64_t begin = static_cast<int64_t>(block) * kTrialsPerBlock;
    const int64_t end = std::min(trials, begin + kTrialsPerBlock);
    int64_t count = 0;
    for (int64_t t = begin; t < end; ++t) {
      double sum = 0;
      uint64_t bits = 0;
      for (size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) bits = gen();
        sum += (bits & 1) ? -d[i] : d[i];
        bits >>= 1;
      }
      if (std::fabs(sum) >= threshold) ++count;
    }
    hits[block] = count;
  });
  int64_t total = 0;
  for (int64_t h : hits) total += h;
  return static_cast<double>(1 + total) / static_cast<double>(1 + trials);
}

SignificanceResult RankSystemPair(const Project& project, Setting setting,
                                  const SystemPair& pair, const RankOptions& options) {
  const ScoreTable table = BuildScoreTable(
      project, setting,
      {options.use_z && setting != Setting::kSxsRr, options.grouping, pair});
  const std::set<SegmentRef> segs_a = table.SegmentsOf(pair.first);
  const std::set<SegmentRef> segs_b = table.SegmentsOf(pair.second);
  if (segs_a != segs_b || segs_a.empty()) {
    throw Error("E_SEGMENT_MISMATCH", "systems scored on different segments",
                pair.first + ": " + std::to_string(segs_a.size()) + ", " + pair.second + ": " +
                    std::to_string(segs_b.size()));
  }
  std::vector<double> a;
  std::vector<double> b;
  for (const SegmentRef& seg : segs_a) {
    a.push_back(*table.SegmentScore(pair.first, seg));
    b.push_back(*table.SegmentScore(pair.second, seg));
  }
  const double score_a = table.system_scores.at(pair.first);
  const double score_b = table.system_scores.at(pair.second);
  const bool a_better = score_a < score_b || (score_a == score_b && pair.first < pair.second);
  SignificanceResult r;
  r.better = a_better ? pair.first : pair.second;
  r.worse = a_better ? pair.second : pair.first;
  r.better_score = a_better ? score_a : score_b;
  r.worse_score = a_better ? score_b : score_a;
  r.p_value = PermutationTest(a, b, options.trials, options.seed);
  r.trials = options.trials;
  r.seed = options.seed;
  r.n_segments = static_cast<int64_t>(a.size());
  return r;
}

std::vector<RankRow> RankReport(const Project& project, const RankOptions& options) {
  std::vector<RankRow> rows;
  for (Setting setting : kAllSettings) {
    if (!HasData(project, setting)) continue;
    for (const SystemPair& pair : project.designated_pairs) {
      try {
        rows.push_back({pair.group, setting, RankSystemPair(project, setting, pair, options)});
      } catch (const Error& e) {
        if (e.code() != "E_NO_ANNOTATIONS") throw;
      }
    }
  }
  return rows;
}

double CorpusBleu(const std::vector<std::string>& hypotheses,
                  const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size()) {
    throw Error("E_LENGTH_MISMATCH", "hypothesis and reference counts differ");
  }
  if (hypotheses.empty()) throw Error("E_EMPTY", "empty corpus");
  int64_t hyp_len = 0;
  int64_t ref_len = 0;
  std::array<int64_t, 4> matches{};
  std::array<int64_t, 4> totals{};
  for (size_t s = 0; s < hypotheses.size(); ++s) {
    const auto hyp = BleuTokens(hypotheses[s]);
    const auto ref = BleuTokens(references[s]);
    hyp_len += static_cast<int64_t>(hyp.size());
    ref_len += static_cast<int64_t>(ref.size());
    for (size_t n = 1; n <= 4; ++n) {
      const auto ref_counts = NgramCounts(ref, n);
      for (const auto& [gram, count] : NgramCounts(hyp, n)) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches[n - 1] += std::min(count, it->second);
      }
      if (hyp.size() >= n) totals[n - 1] += static_cast<int64_t>(hyp.size() - n + 1);
    }
  }
  if (hyp_len == 0) return 0.0;
  double log_sum = 0;
  for (size_t n = 0; n < 4; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  const double bp =
      hyp_len < ref_len ? std::exp(1.0 - static_cast<double>(ref_len) / hyp_len) : 1.0;
  return 100.0 * bp * std::exp(log_sum / 4.0);
}

CrossBleuResult CrossBleu(const std::vector<std::string>& outputs_a,
                          const std::vector<std::string>& outputs_b) {
  CrossBleuResult r;
  r.a_as_hyp = CorpusBleu(outputs_a, outputs_b);
  r.b_as_hyp = CorpusBleu(outputs_b, outputs_a);
  r.score = (r.a_as_hyp + r.b_as_hyp) / 2.0;
  return r;
}

std::vector<SystemPair> PairSelection::Pairs() const {
  std::vector<SystemPair> out;
  if (top2) out.push_back(*top2);
  out.insert(out.end(), high_sim.begin(), high_sim.end());
  out.insert(out.end(), low_sim.begin(), low_sim.end());
  return out;
}

PairSelection SelectPairs(const std::vector<MetricScore>& metric_scores,
                          const std::vector<TranslationUnit>& outputs,
                          const SelectionOptions& options) {
  std::map<std::string, std::map<SegmentRef, double>> scores;
  for (const MetricScore& m : metric_scores) {
    if (!scores[m.system].emplace(m.segment, m.score).second) {
      throw Error("E_BAD_VALUE", "duplicate metric score",
                  m.system + " " + m.segment.doc_id + "/" + m.segment.seg_id);
    }
  }
  if (scores.size() < 6) {
    throw Error("E_TOO_FEW", "pair selection needs at least six systems",
                std::to_string(scores.size()) + " given");
  }
  std::map<std::pair<std::string, SegmentRef>, const std::string*> text;
  for (const TranslationUnit& u : outputs) text.emplace(std::make_pair(u.system, u.segment), &u.target);

  PairSelection sel;
  for (const auto& [system, per_seg] : scores) {
    double sum = 0;
    for (const auto& [seg, s] : per_seg) sum += s;
    sel.ranking.emplace_back(system, sum / static_cast<double>(per_seg.size()));
  }
  std::stable_sort(sel.ranking.begin(), sel.ranking.end(), [&](const auto& x, const auto& y) {
    return options.higher_is_better ? x.second > y.second : x.second < y.second;
  });

  int64_t pair_index = 0;
  for (size_t i = 0; i < sel.ranking.size(); ++i) {
    for (size_t j = i + 1; j < sel.ranking.size(); ++j, ++pair_index) {
      const std::string& a = sel.ranking[i].first;
      const std::string& b = sel.ranking[j].first;
      std::vector<double> va;
      std::vector<double> vb;
      std::vector<std::string> ta;
      std::vector<std::string> tb;
      for (const auto& [seg, s] : scores[a]) {
        auto it = scores[b].find(seg);
        if (it == scores[b].end()) continue;
        va.push_back(s);
        vb.push_back(it->second);
        auto xa = text.find({a, seg});
        auto xb = text.find({b, seg});
        if (xa == text.end() || xb == text.end()) {
          throw Error("E_MISSING_OUTPUT", "no translation for a scored segment",
                      (xa == text.end() ? a : b) + " " + seg.doc_id + "/" + seg.seg_id);
        }
        ta.push_back(*xa->second);
        tb.push_back(*xb->second);
      }
      PairDiagnostic diag;
      diag.a = a;
      diag.b = b;
      diag.rank_a = static_cast<int>(i) + 1;
      diag.rank_b = static_cast<int>(j) + 1;
      diag.n_segments = static_cast<int64_t>(va.size());
      diag.p_value = PermutationTest(va, vb, options.trials,
                                     options.seed + static_cast<uint64_t>(pair_index));
      diag.cross_bleu = CrossBleu(ta, tb);
      sel.diagnostics.push_back(std::move(diag));
    }
  }

  const PairDiagnostic& best = sel.diagnostics.front();  // ranks 1 and 2
  if (best.p_value > options.threshold) sel.top2 = SystemPair{best.a, best.b, "top2"};

  std::vector<const PairDiagnostic*> similar;
  for (size_t k = 1; k < sel.diagnostics.size(); ++k) {
    if (sel.diagnostics[k].p_value > options.threshold) similar.push_back(&sel.diagnostics[k]);
  }
  const size_t need = static_cast<size_t>(2 * options.per_group);
  if (similar.size() < need) {
    throw Error("E_INSUFFICIENT_PAIRS", "too few similar-quality pairs",
                std::to_string(similar.size()) + " of " + std::to_string(need) + " needed");
  }
  std::stable_sort(similar.begin(), similar.end(),
                   [](const PairDiagnostic* x, const PairDiagnostic* y) {
                     return x->cross_bleu.score > y->cross_bleu.score;
                   });
  for (size_t k = 0; k < static_cast<size_t>(options.per_group); ++k) {
    sel.high_sim.push_back({similar[k]->a, similar[k]->b, "high-sim"});
  }
  for (size_t k = similar.size() - static_cast<size_t>(options.per_group); k < similar.size();
       ++k) {
    sel.low_sim.push_back({similar[k]->a, similar[k]->b, "low-sim"});
  }
  return sel;
}

}  // namespace sxseval
