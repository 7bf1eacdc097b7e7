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

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cctype>

#include "sxseval/error.h"

namespace sxseval::text {
namespace {

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw Error("E_ICU", "NFC normalizer unavailable", u_errorName(status));
  }
  return *nfc;
}

// Calls fn(code_point, byte_begin, byte_end) for each scalar value.
template <typename Fn>
void ForEachCodePoint(std::string_view utf8, Fn&& fn) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw Error("E_BAD_UTF8", "malformed UTF-8",
                  "byte " + std::to_string(begin));
    }
    fn(c, static_cast<size_t>(begin), static_cast<size_t>(i));
  }
}

}  // namespace

bool IsValidUtf8(std::string_view utf8) {
  try {
    ForEachCodePoint(utf8, [](UChar32, size_t, size_t) {});
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string ToNfc(std::string_view utf8) {
  if (!IsValidUtf8(utf8)) throw Error("E_BAD_UTF8", "malformed UTF-8");
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = Nfc().normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size()))),
      status);
  if (U_FAILURE(status)) {
    throw Error("E_ICU", "NFC normalization failed", u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool IsNfc(std::string_view utf8) {
  if (!IsValidUtf8(utf8)) return false;
  UErrorCode status = U_ZERO_ERROR;
  const bool ok = Nfc().isNormalized(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size()))),
      status);
  return U_SUCCESS(status) && ok;
}

size_t Length(std::string_view utf8) {
  size_t n = 0;
  ForEachCodePoint(utf8, [&n](UChar32, size_t, size_t) { ++n; });
  return n;
}

size_t ByteOffset(std::string_view utf8, size_t index) {
  size_t n = 0;
  size_t found = std::string_view::npos;
  ForEachCodePoint(utf8, [&](UChar32, size_t begin, size_t) {
    if (n == index && found == std::string_view::npos) found = begin;
    ++n;
  });
  if (found != std::string_view::npos) return found;
  if (index == n) return utf8.size();
  throw Error("E_SPAN_BOUNDS", "offset beyond end of text",
              std::to_string(index) + " > " + std::to_string(n));
}

std::string_view Slice(std::string_view utf8, size_t begin, size_t end) {
  if (begin > end) {
    throw Error("E_SPAN_BOUNDS", "slice begin after end");
  }
  const size_t b = ByteOffset(utf8, begin);
  const size_t e = ByteOffset(utf8, end);
  return utf8.substr(b, e - b);
}

std::vector<Token> Tokenize(std::string_view utf8) {
  std::vector<Token> tokens;
  size_t index = 0;
  bool in_token = false;
  size_t byte_begin = 0;
  ForEachCodePoint(utf8, [&](UChar32 c, size_t begin, size_t) {
    const bool space = u_isUWhiteSpace(c);
    if (!space && !in_token) {
      in_token = true;
      byte_begin = begin;
      tokens.push_back(Token{"", index, index});
    } else if (space && in_token) {
      in_token = false;
      tokens.back().text = std::string(utf8.substr(byte_begin, begin - byte_begin));
      tokens.back().end = index;
    }
    ++index;
  });
  if (in_token) {
    tokens.back().text = std::string(utf8.substr(byte_begin));
    tokens.back().end = index;
  }
  return tokens;
}

std::vector<std::string> TokenStrings(std::string_view utf8) {
  std::vector<std::string> out;
  for (auto& t : Tokenize(utf8)) out.push_back(std::move(t.text));
  return out;
}

std::string ToLower(std::string_view ascii) {
  std::string out(ascii);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace sxseval::text
