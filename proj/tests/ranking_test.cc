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

#include <gtest/gtest.h>

#include <set>

#include "sxseval/error.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace sxseval {
namespace {

using Label = ComparisonLabel;

std::string Code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

UnitKey Key(int i) { return {{"d", std::to_string(i)}, "A", "B"}; }

TEST(PraTest, SixUnitExample) {
  // 3 concordant, 1 discordant, 1 tied only under alpha, 1 tied under both.
  const UnitLabels alpha = {{Key(0), Label::kABetter}, {Key(1), Label::kBBetter},
                            {Key(2), Label::kABetter}, {Key(3), Label::kABetter},
                            {Key(4), Label::kTie},     {Key(5), Label::kTie}};
  const UnitLabels beta = {{Key(0), Label::kABetter}, {Key(1), Label::kBBetter},
                           {Key(2), Label::kABetter}, {Key(3), Label::kBBetter},
                           {Key(4), Label::kABetter}, {Key(5), Label::kTie}};
  const PraResult r = Pra(alpha, beta);
  EXPECT_EQ(r.counts, (PraCounts{3, 1, 1, 0, 1}));
  EXPECT_DOUBLE_EQ(r.value, 4.0 / 6.0);
}

TEST(PraTest, Errors) {
  EXPECT_EQ(Code([] { Pra({}, {}); }), "E_EMPTY");
  EXPECT_EQ(Code([] { Pra({{Key(0), Label::kTie}}, {{Key(1), Label::kTie}}); }),
            "E_UNIT_MISMATCH");
}

TEST(PraTest, MatchesOracleAndIsSymmetric) {
  testing::Rng rng(12);
  const std::vector<Label> labels = {Label::kABetter, Label::kTie, Label::kBBetter};
  for (int trial = 0; trial < 500; ++trial) {
    UnitLabels a;
    UnitLabels b;
    const int n = rng.Int(1, 30);
    for (int i = 0; i < n; ++i) {
      a[Key(i)] = rng.Pick(labels);
      b[Key(i)] = rng.Pick(labels);
    }
    const PraResult got = Pra(a, b);
    const PraResult want = testing::BrutePra(a, b);
    ASSERT_EQ(got.counts, want.counts);
    ASSERT_NEAR(got.value, want.value, 1e-12);
    ASSERT_DOUBLE_EQ(Pra(b, a).value, got.value);
    ASSERT_DOUBLE_EQ(Pra(a, a).value, 1.0);
  }
}

TEST(PraTest, ReportOnRandomProject) {
  testing::Rng rng(40);
  const Project p = testing::RandomProject(rng);
  for (const PraRow& row : PraReport(p)) {
    EXPECT_GE(row.result.value, 0.0);
    EXPECT_LE(row.result.value, 1.0);
    EXPECT_NE(row.alpha, row.beta);
  }
}

TEST(PermutationTest, ConstantShift) {
  const std::vector<double> a(4, 0.0);
  const std::vector<double> b(4, 5.0);
  EXPECT_DOUBLE_EQ(testing::ExhaustivePermutationP(a, b), 2.0 / 16.0);
  EXPECT_NEAR(PermutationTest(a, b, 20000, 1), 0.125, 0.02);
}

TEST(PermutationTest, LargeSeparationIsSignificant) {
  const std::vector<double> a(20, 0.0);
  const std::vector<double> b(20, 1.0);
  EXPECT_LT(PermutationTest(a, b, 10000, 7), 0.001);
}

TEST(PermutationTest, IdenticalSystemsGiveOne) {
  const std::vector<double> a = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(PermutationTest(a, a, 1000, 3), 1.0);
}

TEST(PermutationTest, DeterministicPerSeed) {
  testing::Rng rng(2);
  std::vector<double> a(30);
  std::vector<double> b(30);
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.Real(0, 5);
    b[i] = rng.Real(0, 5.5);
  }
  EXPECT_EQ(PermutationTest(a, b, 5000, 11), PermutationTest(a, b, 5000, 11));
  EXPECT_EQ(PermutationTest(a, b, 5000, 11), PermutationTest(b, a, 5000, 11));
}

TEST(PermutationTest, CloseToExactValue) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.Int(2, 8);
    std::vector<double> a(static_cast<size_t>(n));
    std::vector<double> b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<size_t>(i)] = rng.Int(0, 10);
      b[static_cast<size_t>(i)] = rng.Int(0, 10);
    }
    EXPECT_NEAR(PermutationTest(a, b, 20000, static_cast<uint64_t>(trial)),
                testing::ExhaustivePermutationP(a, b), 0.02);
  }
}

TEST(PermutationTest, Errors) {
  EXPECT_EQ(Code([] { PermutationTest({1, 2}, {1}, 10, 0); }), "E_LENGTH_MISMATCH");
  EXPECT_EQ(Code([] { PermutationTest({1}, {1}, 10, 0); }), "E_TOO_SHORT");
  EXPECT_EQ(Code([] { PermutationTest({1, 2}, {1, 2}, 0, 0); }), "E_BAD_ARGUMENT");
}

TEST(RankTest, BetterSystemComesFirst) {
  testing::Rng rng(77);
  testing::ProjectShape shape;
  shape.min_docs = 2;
  shape.min_segments = 3;
  const Project p = testing::RandomProject(rng, shape);
  RankOptions opt;
  opt.trials = 500;
  for (const RankRow& row : RankReport(p, opt)) {
    // MQM and RR scores are penalties: lower is better.
    EXPECT_LE(row.result.better_score, row.result.worse_score);
    EXPECT_GT(row.result.p_value, 0.0);
    EXPECT_LE(row.result.p_value, 1.0);
  }
}

// Values frozen from sacrebleu.corpus_bleu(tokenize="none",
// smooth_method="none", force=True).
TEST(BleuTest, MatchesFrozenValues) {
  EXPECT_NEAR(CorpusBleu({"the cat sat on the mat", "a quick brown fox jumps"},
                         {"the cat sat on a mat", "the quick brown fox jumped"}),
              43.13894320445206, 0.01);
  EXPECT_NEAR(CorpusBleu({"it is a guide to action which ensures that the military always "
                          "obeys the commands of the party"},
                         {"it is a guide to action that ensures that the military will "
                          "forever heed party commands"}),
              42.08598069524091, 0.01);
  EXPECT_NEAR(CorpusBleu({"short one"},
                         {"this reference is considerably longer than the short one"}),
              0.0, 0.01);
  EXPECT_NEAR(CorpusBleu({"das Haus ist klein und alt", "ich gehe heute nach Hause",
                          "wir sehen uns morgen früh"},
                         {"das Haus ist klein", "ich gehe jetzt nach Hause zurück",
                          "wir sehen uns morgen früh wieder"}),
              58.92219763507692, 0.01);
  EXPECT_NEAR(CorpusBleu({"a b c d"}, {"a b c d"}), 100.0, 1e-9);
  EXPECT_EQ(Code([] { CorpusBleu({}, {}); }), "E_EMPTY");
  EXPECT_EQ(Code([] { CorpusBleu({"a"}, {}); }), "E_LENGTH_MISMATCH");
}

TEST(BleuTest, CrossBleuAveragesDirections) {
  const std::vector<std::string> a = {"the cat sat on the mat today"};
  const std::vector<std::string> b = {"the cat sat on a mat"};
  const CrossBleuResult r = CrossBleu(a, b);
  EXPECT_DOUBLE_EQ(r.a_as_hyp, CorpusBleu(a, b));
  EXPECT_DOUBLE_EQ(r.b_as_hyp, CorpusBleu(b, a));
  EXPECT_DOUBLE_EQ(r.score, (r.a_as_hyp + r.b_as_hyp) / 2);
}

struct SelectionInput {
  std::vector<MetricScore> scores;
  std::vector<TranslationUnit> outputs;
};

SelectionInput SimilarSystems(int systems, uint64_t seed) {
  testing::Rng rng(seed);
  SelectionInput in;
  std::vector<std::vector<std::string>> base;
  for (int s = 0; s < 20; ++s) base.push_back(testing::RandomWords(rng, 6, 12, true));
  for (int k = 0; k < systems; ++k) {
    const std::string sys = "sys" + std::to_string(k);
    for (int s = 0; s < 20; ++s) {
      const SegmentRef seg{"d", std::to_string(s)};
      in.scores.push_back({sys, seg, rng.Real(0, 1)});
      in.outputs.push_back(
          {sys, seg, "src", testing::JoinWords(testing::Perturb(rng, base[s], true))});
    }
  }
  return in;
}

TEST(SelectPairsTest, GroupsAndOrdering) {
  const SelectionInput in = SimilarSystems(7, 3);
  SelectionOptions opt;
  opt.trials = 2000;
  const PairSelection sel = SelectPairs(in.scores, in.outputs, opt);
  ASSERT_EQ(sel.ranking.size(), 7u);
  for (size_t i = 1; i < sel.ranking.size(); ++i) {
    EXPECT_GE(sel.ranking[i - 1].second, sel.ranking[i].second);
  }
  EXPECT_EQ(sel.diagnostics.size(), 21u);
  ASSERT_EQ(sel.high_sim.size(), 2u);
  ASSERT_EQ(sel.low_sim.size(), 2u);
  std::map<std::pair<std::string, std::string>, const PairDiagnostic*> diag;
  for (const auto& d : sel.diagnostics) diag[{d.a, d.b}] = &d;
  double lowest_high = 1e9;
  for (const SystemPair& p : sel.high_sim) {
    EXPECT_EQ(p.group, "high-sim");
    lowest_high = std::min(lowest_high, diag.at({p.first, p.second})->cross_bleu.score);
    EXPECT_GT(diag.at({p.first, p.second})->p_value, opt.threshold);
  }
  for (const SystemPair& p : sel.low_sim) {
    EXPECT_LE(diag.at({p.first, p.second})->cross_bleu.score, lowest_high);
  }
  std::set<std::pair<std::string, std::string>> distinct;
  for (const SystemPair& p : sel.Pairs()) distinct.insert({p.first, p.second});
  EXPECT_EQ(distinct.size(), sel.Pairs().size());
  EXPECT_EQ(sel.Pairs().size(), 4u + (sel.top2 ? 1u : 0u));
}

TEST(SelectPairsTest, Errors) {
  const SelectionInput five = SimilarSystems(5, 1);
  EXPECT_EQ(Code([&] { SelectPairs(five.scores, five.outputs, {}); }), "E_TOO_FEW");
  SelectionInput six = SimilarSystems(6, 1);
  six.outputs.pop_back();
  SelectionOptions opt;
  opt.trials = 100;
  EXPECT_EQ(Code([&] { SelectPairs(six.scores, six.outputs, opt); }), "E_MISSING_OUTPUT");
}

}  // namespace
}  // namespace sxseval
