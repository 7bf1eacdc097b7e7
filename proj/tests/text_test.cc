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

#include "sxseval/text.h"

#include <gtest/gtest.h>

#include "sxseval/error.h"

namespace sxseval::text {
namespace {

TEST(TextTest, LengthCountsScalarValues) {
  EXPECT_EQ(Length(""), 0u);
  EXPECT_EQ(Length("abc"), 3u);
  EXPECT_EQ(Length("über"), 4u);
  EXPECT_EQ(Length("日本語"), 3u);
  EXPECT_EQ(Length("a😀b"), 3u);
}

TEST(TextTest, SliceUsesScalarOffsets) {
  EXPECT_EQ(Slice("a😀bc", 1, 3), "😀b");
  EXPECT_EQ(ByteOffset("日本語", 2), 6u);
  EXPECT_THROW(ByteOffset("abc", 4), Error);
}

TEST(TextTest, Utf8Validation) {
  EXPECT_TRUE(IsValidUtf8("straße"));
  EXPECT_FALSE(IsValidUtf8("\xff\xfe"));
  EXPECT_FALSE(IsValidUtf8("\xc3"));
}

TEST(TextTest, NormalizationComposes) {
  const std::string decomposed = "e\xcc\x81";  // e + combining acute
  EXPECT_FALSE(IsNfc(decomposed));
  EXPECT_EQ(ToNfc(decomposed), "\xc3\xa9");
  EXPECT_TRUE(IsNfc("caf\xc3\xa9"));
}

TEST(TextTest, TokenizeSplitsOnUnicodeWhitespace) {
  // U+3000 ideographic space and a no-break space both separate tokens.
  const auto tokens = Tokenize("a\xe3\x80\x80 b\xc2\xa0" "c  d");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].text, "a");
  EXPECT_EQ(tokens[1].text, "b");
  EXPECT_EQ(tokens[2].text, "c");
  EXPECT_EQ(tokens[3].begin, 8u);
  EXPECT_EQ(tokens[3].end, 9u);
  EXPECT_TRUE(Tokenize("   ").empty());
}

}  // namespace
}  // namespace sxseval::text
