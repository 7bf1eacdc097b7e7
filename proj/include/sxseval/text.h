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

#ifndef SXSEVAL_TEXT_H_
#define SXSEVAL_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. All offsets are Unicode scalar-value indices, never bytes.
namespace sxseval::text {

bool IsValidUtf8(std::string_view utf8);

// Throws E_BAD_UTF8 on malformed input.
std::string ToNfc(std::string_view utf8);
bool IsNfc(std::string_view utf8);

// Number of scalar values. Throws E_BAD_UTF8.
size_t Length(std::string_view utf8);

// Byte offset of scalar index `index` (index == Length() gives size()).
size_t ByteOffset(std::string_view utf8, size_t index);

// Scalar-indexed substring [begin, end).
std::string_view Slice(std::string_view utf8, size_t begin, size_t end);

struct Token {
  std::string text;
  size_t begin = 0;  // scalar offset, inclusive
  size_t end = 0;    // scalar offset, exclusive
};

// Splits on Unicode White_Space runs.
std::vector<Token> Tokenize(std::string_view utf8);
std::vector<std::string> TokenStrings(std::string_view utf8);

std::string ToLower(std::string_view ascii);
std::string Trim(std::string_view s);

}  // namespace sxseval::text

#endif  // SXSEVAL_TEXT_H_
