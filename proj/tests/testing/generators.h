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

#ifndef SXSEVAL_TESTS_TESTING_GENERATORS_H_
#define SXSEVAL_TESTS_TESTING_GENERATORS_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sxseval/model.h"

namespace sxseval::testing {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double Real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  bool Chance(double p) { return Real(0, 1) < p; }
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(Int(0, static_cast<int>(v.size()) - 1))];
  }
  std::mt19937_64& gen() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// NFC-stable words; concatenating them never needs renormalization.
inline const std::vector<std::string>& Vocabulary(bool ascii_only) {
  static const std::vector<std::string> ascii = {"the", "cat", "sat", "on", "mat", "a",
                                                 "dog", "ran", "to", "big", "red", "x"};
  static const std::vector<std::string> mixed = {
      "the", "cat", "über", "café", "日本語", "naïve", "straße", "😀", "go", "a", "Ωmega", "x"};
  return ascii_only ? ascii : mixed;
}

inline std::vector<std::string> RandomWords(Rng& rng, int lo, int hi, bool ascii_only) {
  std::vector<std::string> words(static_cast<size_t>(rng.Int(lo, hi)));
  for (std::string& w : words) w = rng.Pick(Vocabulary(ascii_only));
  return words;
}

inline std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) out += (i ? " " : "") + words[i];
  return out;
}

// A variant of `words` with a few substitutions, insertions, and deletions,
// so two systems' outputs share aligned text.
inline std::vector<std::string> Perturb(Rng& rng, std::vector<std::string> words,
                                        bool ascii_only) {
  const int edits = rng.Int(0, 3);
  for (int e = 0; e < edits; ++e) {
    const int kind = rng.Int(0, 2);
    if (kind == 0 && !words.empty()) {
      words[static_cast<size_t>(rng.Int(0, static_cast<int>(words.size()) - 1))] =
          rng.Pick(Vocabulary(ascii_only));
    } else if (kind == 1) {
      words.insert(words.begin() + rng.Int(0, static_cast<int>(words.size())),
                   rng.Pick(Vocabulary(ascii_only)));
    } else if (words.size() > 1) {
      words.erase(words.begin() + rng.Int(0, static_cast<int>(words.size()) - 1));
    }
  }
  return words;
}

inline ErrorCategory RandomCategory(Rng& rng, bool source_side) {
  if (source_side) return {Category::kSourceIssue, std::nullopt};
  std::vector<Category> cats;
  for (Category c : AllCategories()) {
    if (c != Category::kSourceIssue) cats.push_back(c);
  }
  ErrorCategory out{rng.Pick(cats), std::nullopt};
  const auto subs = SubcategoriesOf(out.category);
  if (!subs.empty() && rng.Chance(0.7)) {
    out.subcategory = subs[static_cast<size_t>(rng.Int(0, static_cast<int>(subs.size()) - 1))];
  }
  return out;
}

// A valid error on a unit with the given scalar lengths.
inline ErrorSpan RandomError(Rng& rng, size_t source_len, size_t target_len,
                             double source_rate = 0.1, double unspecified_rate = 0.1) {
  ErrorSpan e;
  e.side = source_len > 0 && rng.Chance(source_rate) ? Side::kSource : Side::kTarget;
  e.category = RandomCategory(rng, e.side == Side::kSource);
  e.severity = rng.Chance(0.4) ? Severity::kMajor : Severity::kMinor;
  if (e.category.category == Category::kNonTranslation) e.severity = Severity::kMajor;
  const size_t len = e.side == Side::kSource ? source_len : target_len;
  if (len == 0 || rng.Chance(unspecified_rate)) {
    e.unspecified_span = true;
    return e;
  }
  e.start = static_cast<size_t>(rng.Int(0, static_cast<int>(len) - 1));
  e.end = static_cast<size_t>(rng.Int(static_cast<int>(e.start) + 1, static_cast<int>(len)));
  return e;
}

struct ProjectShape {
  int min_docs = 1;
  int max_docs = 3;
  int min_segments = 1;
  int max_segments = 4;
  int min_systems = 3;
  int max_systems = 5;
  int min_pairs = 1;
  int max_pairs = 3;
  int annotators = 3;
  int min_words = 1;
  int max_words = 8;
  int max_errors = 3;
  double coverage = 0.9;  // chance each annotation or judgment exists
  bool ascii_only = false;
};

// A valid, canonical project with all three settings populated.
Project RandomProject(Rng& rng, const ProjectShape& shape = {});

}  // namespace sxseval::testing

#endif  // SXSEVAL_TESTS_TESTING_GENERATORS_H_
