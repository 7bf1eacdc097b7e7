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

#include "sxseval/profiling.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sxseval/error.h"
#include "testing/generators.h"

namespace sxseval {
namespace {

std::string Code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

ErrorSpan Err(size_t s, size_t e, Category c = Category::kAccuracy,
              Severity sev = Severity::kMajor) {
  return {Side::kTarget, s, e, {c, std::nullopt}, sev, false};
}

Project ThreeSystems() {
  Project p;
  p.language_pair = "en-de";
  p.documents = {{"d", {"1"}}};
  p.systems = {"A", "B", "C"};
  p.annotators = {"r1", "r2"};
  p.units = {{"A", {"d", "1"}, "s", "aaaa bbbb"},
             {"B", {"d", "1"}, "s", "cccc dddd"},
             {"C", {"d", "1"}, "s", "eeee ffff"}};
  p.designated_pairs = {{"A", "B", "top2"}, {"A", "C", "low-sim"}};
  return p;
}

TEST(DistributionTest, DuplicateRuleCountsPerPair) {
  Project p = ThreeSystems();
  p.mqm = {{"r1", Setting::kMqm, "A", {"d", "1"}, {Err(0, 4)}, {}},
           {"r1", Setting::kMqm, "B", {"d", "1"}, {Err(0, 4, Category::kFluency)}, {}}};
  Canonicalize(p);
  const ErrorDistribution plain = ComputeErrorDistribution(p, Setting::kMqm);
  EXPECT_EQ(plain.total, 2);
  const ErrorDistribution dup =
      ComputeErrorDistribution(p, Setting::kMqm, {.duplicate_rule = true});
  // A is in two pairs, B in one.
  EXPECT_EQ(dup.total, 3);
  const auto key = std::make_pair(ErrorCategory{Category::kAccuracy, std::nullopt},
                                  Severity::kMajor);
  EXPECT_EQ(dup.counts.at(key), 2);
  EXPECT_DOUBLE_EQ(dup.percentages.at(key), 2.0 / 3.0);
  EXPECT_TRUE(dup.percentages_defined);
}

TEST(DistributionTest, EmptyAndSourceSide) {
  Project p = ThreeSystems();
  p.mqm = {{"r1", Setting::kMqm, "A", {"d", "1"},
            {{Side::kSource, 0, 1, {Category::kSourceIssue, std::nullopt}, Severity::kMinor,
              false}},
            {}}};
  Canonicalize(p);
  const ErrorDistribution d = ComputeErrorDistribution(p, Setting::kMqm);
  EXPECT_EQ(d.total, 0);
  EXPECT_FALSE(d.percentages_defined);
  EXPECT_EQ(Code([&] { ComputeErrorDistribution(p, Setting::kSxsRr); }), "E_SETTING");
}

TEST(DistributionTest, PercentagesSumToOne) {
  testing::Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    const Project p = testing::RandomProject(rng);
    for (bool sub : {false, true}) {
      const auto d = ComputeErrorDistribution(p, Setting::kSxsMqm, {.subcategories = sub});
      if (!d.percentages_defined) continue;
      double sum = 0;
      int64_t count = 0;
      for (const auto& [k, v] : d.percentages) sum += v;
      for (const auto& [k, v] : d.counts) count += v;
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_EQ(count, d.total);
    }
  }
}

TEST(MatchSpansTest, GreedyByOverlap) {
  const std::vector<ErrorSpan> first = {Err(0, 4), Err(5, 9)};
  const std::vector<ErrorSpan> second = {Err(6, 9), Err(0, 2), Err(3, 6)};
  auto m = MatchSpans(first, second);
  std::sort(m.begin(), m.end());
  // (1,0) overlaps by 3, (0,1) by 2; span (3,6) then has nothing left.
  EXPECT_EQ(m, (std::vector<std::pair<size_t, size_t>>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(MatchSpans(first, second, {.exact = true}).empty());
  EXPECT_EQ(MatchSpans(first, {Err(5, 9)}, {.exact = true}).size(), 1u);
  EXPECT_TRUE(MatchSpans(first, {Err(4, 5)}).empty());
}

TEST(ConversionTest, MatrixCountsCategoryTransitions) {
  Project p = ThreeSystems();
  p.mqm = {{"r1", Setting::kMqm, "A", {"d", "1"}, {Err(0, 4)}, {}},
           {"r1", Setting::kSxsMqm, "A", {"d", "1"}, {Err(0, 3, Category::kFluency)}, "B"},
           {"r1", Setting::kSxsMqm, "B", {"d", "1"}, {}, "A"},
           {"r1", Setting::kSxsMqm, "A", {"d", "1"}, {Err(1, 4)}, "C"},
           {"r1", Setting::kSxsMqm, "C", {"d", "1"}, {}, "A"}};
  Canonicalize(p);
  const ConversionMatrix m = BuildConversionMatrix(p);
  EXPECT_EQ(m.total, 2);
  EXPECT_EQ(m.cells.at({Category::kAccuracy, Category::kFluency}), 1);
  EXPECT_EQ(m.cells.at({Category::kAccuracy, Category::kAccuracy}), 1);
  Project none = ThreeSystems();
  EXPECT_EQ(Code([&] { BuildConversionMatrix(none); }), "E_NO_MATCHES");
}

TEST(OutlierTest, SyntheticPool) {
  const std::vector<int64_t> counts = {525, 1188, 1785, 1808, 2158, 2885, 3875, 6915};
  std::vector<std::pair<std::string, int64_t>> pool;
  for (size_t i = 0; i < counts.size(); ++i) pool.emplace_back("r" + std::to_string(i), counts[i]);
  const auto stats = OutlierStats(pool, Setting::kMqm);
  ASSERT_EQ(stats.size(), 8u);
  EXPECT_NEAR(stats[7].z, 2.28, 0.005);
  EXPECT_TRUE(stats[7].flagged);
  for (size_t i = 0; i < 7; ++i) EXPECT_FALSE(stats[i].flagged) << i;
  EXPECT_EQ(Code([] { OutlierStats({{"r", 1}}, Setting::kMqm); }), "E_TOO_FEW");
}

TEST(OutlierTest, EqualCountsAreNotFlagged) {
  const auto stats = OutlierStats({{"a", 5}, {"b", 5}, {"c", 5}}, Setting::kMqm);
  for (const auto& s : stats) {
    EXPECT_EQ(s.z, 0.0);
    EXPECT_FALSE(s.flagged);
  }
}

TEST(ScoreDistributionTest, MeanAndMedian) {
  Project p = ThreeSystems();
  p.units.push_back({"A", {"d", "2"}, "s", "x"});
  p.units.push_back({"A", {"d", "3"}, "s", "x"});
  p.documents = {{"d", {"1", "2", "3"}}};
  p.mqm = {{"r2", Setting::kMqm, "A", {"d", "1"}, {}, {}},
           {"r2", Setting::kMqm, "A", {"d", "2"}, {}, {}},
           {"r2", Setting::kMqm, "A", {"d", "3"}, {Err(0, 1)}, {}},
           {"r1", Setting::kMqm, "A", {"d", "1"}, {Err(0, 1)}, {}}};
  Canonicalize(p);
  const auto rows = ScoreDistributionExport(p, Setting::kMqm);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].label, "A1");
  EXPECT_EQ(rows[0].annotator, "r1");
  EXPECT_EQ(rows[1].label, "A2");
  EXPECT_DOUBLE_EQ(rows[1].mean, 5.0 / 3.0);
  EXPECT_EQ(rows[1].median, 0.0);
  EXPECT_EQ(rows[1].q3, 2.5);
}

TEST(ScoreDistributionTest, Quantile) {
  EXPECT_EQ(Quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_EQ(Quantile({1, 2, 3, 4}, 0.0), 1.0);
  EXPECT_EQ(Quantile({1, 2, 3, 4}, 1.0), 4.0);
  EXPECT_EQ(Quantile({7}, 0.25), 7.0);
}

}  // namespace
}  // namespace sxseval
