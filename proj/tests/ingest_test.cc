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

#include <gtest/gtest.h>

#include "sxseval/error.h"
#include "testing/generators.h"

namespace sxseval {
namespace {

std::string ErrorCode(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST(IngestTest, ExtractSpanCountsCharacters) {
  const ExtractedSpan s = ExtractSpan("good <v>morning</v> all");
  EXPECT_EQ(s.clean, "good morning all");
  ASSERT_TRUE(s.span.has_value());
  EXPECT_EQ(*s.span, std::make_pair(size_t{5}, size_t{12}));

  const ExtractedSpan u = ExtractSpan("schön <v>über</v>");
  EXPECT_EQ(u.span, std::make_pair(size_t{6}, size_t{10}));
  EXPECT_FALSE(ExtractSpan("no markers").span.has_value());
}

TEST(IngestTest, ExtractSpanRejectsBadMarkers) {
  EXPECT_EQ(ErrorCode([] { ExtractSpan("a <v>b"); }), "E_MARKER_UNBALANCED");
  EXPECT_EQ(ErrorCode([] { ExtractSpan("a </v>b<v>"); }), "E_MARKER_UNBALANCED");
  EXPECT_EQ(ErrorCode([] { ExtractSpan("<v>a</v> <v>b</v>"); }), "E_MARKER_MULTIPLE");
}

TEST(IngestTest, InsertMarkersInvertsExtract) {
  EXPECT_EQ(InsertMarkers("good morning all", 5, 12), "good <v>morning</v> all");
  EXPECT_EQ(ErrorCode([] { InsertMarkers("abc", 2, 9); }), "E_SPAN_BOUNDS");
}

constexpr char kHeader[] = "system\tdoc\tdoc_id\tseg_id\trater\tsource\ttarget\tcategory\tseverity\n";

TEST(IngestTest, ParsesWmtRows) {
  const std::string tsv = std::string(kHeader) +
                          "A\td1\td1\t1\tr1\thi\tgood <v>morning</v> all\tAccuracy/Mistranslation\tMajor\n"
                          "A\td1\td1\t1\tr1\thi\tgood morning all\tFluency/Punctuation\tMinor\n"
                          "A\td1\td1\t2\tr1\tyo\tfine\tNo-error\tNo-error\n";
  const MqmTsvData data = ParseMqmTsv(tsv, Setting::kMqm);
  ASSERT_EQ(data.annotations.size(), 2u);
  const MqmAnnotation& first = data.annotations[0];
  ASSERT_EQ(first.errors.size(), 2u);
  // Canonical order puts the unspecified span (offsets 0, 0) first.
  EXPECT_TRUE(first.errors[0].unspecified_span);
  EXPECT_EQ(first.errors[1].start, 5u);
  EXPECT_EQ(first.errors[1].end, 12u);
  EXPECT_TRUE(data.annotations[1].errors.empty());
  EXPECT_EQ(data.units.size(), 2u);
}

TEST(IngestTest, SourceMarkersGiveSourceSideErrors) {
  const std::string tsv = std::string(kHeader) +
                          "A\td1\td1\t1\tr1\tan <v>typo</v>\tok\tSource issue\tMinor\n";
  const MqmTsvData data = ParseMqmTsv(tsv, Setting::kMqm);
  ASSERT_EQ(data.annotations[0].errors.size(), 1u);
  EXPECT_EQ(data.annotations[0].errors[0].side, Side::kSource);
  EXPECT_EQ(data.units[0].source, "an typo");
}

TEST(IngestTest, ReportsRowNumbers) {
  const std::string tsv = std::string(kHeader) + "A\td1\td1\t1\tr1\ts\tt\tBogus\tMajor\n";
  try {
    ParseMqmTsv(tsv, Setting::kMqm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "E_UNKNOWN_CATEGORY");
    EXPECT_NE(e.detail().find("row 2"), std::string::npos);
  }
  EXPECT_EQ(ErrorCode([] { ParseMqmTsv("system\tfoo\n", Setting::kMqm); }), "E_BAD_HEADER");
  EXPECT_EQ(ErrorCode([] {
              ParseMqmTsv(std::string(kHeader) + "A\td1\td1\t1\tr1\ts\tt\tAccuracy\tSevere\n",
                          Setting::kMqm);
            }),
            "E_SEVERITY_PARSE");
  EXPECT_EQ(ErrorCode([] { ParseMqmTsv(std::string(kHeader), Setting::kSxsMqm); }),
            "E_BAD_HEADER");
}

TEST(IngestTest, ConflictingUnitTextIsRejected) {
  const std::string tsv = std::string(kHeader) +
                          "A\td1\td1\t1\tr1\ts\tone\tNo-error\tNo-error\n"
                          "A\td1\td1\t1\tr2\ts\ttwo\tNo-error\tNo-error\n";
  EXPECT_EQ(ErrorCode([&] { ParseMqmTsv(tsv, Setting::kMqm); }), "E_UNIT_CONFLICT");
}

TEST(IngestTest, RrRoundTrip) {
  std::vector<RrJudgment> j = {{"r1", {"d1", "1"}, "A", "B", RrValue::kBMuchBetter},
                               {"r2", {"d1", "1"}, "B", "A", RrValue::kSame}};
  const auto parsed = ParseRrTsv(WriteRrTsv(j));
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(WriteRrTsv(parsed), WriteRrTsv(j));
  EXPECT_EQ(ErrorCode([] {
              ParseRrTsv("doc_id\tseg_id\tsystem_a\tsystem_b\trater\tvalue\nd\t1\tA\tB\tr\tmeh\n");
            }),
            "E_BAD_VALUE");
}

TEST(IngestTest, MetricScores) {
  const auto scores =
      ParseMetricScoresTsv("system\tdoc_id\tseg_id\tscore\nA\td1\t1\t0.5\nB\td1\t1\t-2\n");
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_DOUBLE_EQ(scores[1].score, -2.0);
}

// write ∘ parse is the identity on written TSV, and parse recovers the
// annotations of randomized projects exactly.
TEST(IngestTest, RandomizedRoundTrip) {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Project p = testing::RandomProject(rng);
    for (Setting s : {Setting::kMqm, Setting::kSxsMqm}) {
      std::vector<MqmAnnotation> expected;
      for (const MqmAnnotation& a : p.mqm) {
        if (a.setting == s) expected.push_back(a);
      }
      const std::string tsv = WriteMqmTsv(p.mqm, p.units, s);
      const MqmTsvData data = ParseMqmTsv(tsv, s);
      ASSERT_EQ(data.annotations, expected) << "iteration " << i;
      ASSERT_EQ(WriteMqmTsv(data.annotations, data.units, s), tsv);
    }
    ASSERT_EQ(ParseRrTsv(WriteRrTsv(p.rr)), p.rr);
    ASSERT_EQ(ParseUnitsTsv(WriteUnitsTsv(p.units)), p.units);
  }
}

}  // namespace
}  // namespace sxseval
