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

#include "testing/generators.h"

#include <set>

#include "sxseval/text.h"

namespace sxseval::testing {

namespace {

void AddErrors(Rng& rng, const ProjectShape& shape, const TranslationUnit& unit,
               MqmAnnotation& a) {
  const int n = rng.Int(0, shape.max_errors);
  for (int i = 0; i < n; ++i) {
    a.errors.push_back(RandomError(rng, text::Length(unit.source), text::Length(unit.target)));
  }
  SortErrors(a.errors);
}

}  // namespace

Project RandomProject(Rng& rng, const ProjectShape& shape) {
  Project p;
  p.language_pair = rng.Chance(0.5) ? "en-de" : "zh-en";
  const int n_systems = rng.Int(shape.min_systems, shape.max_systems);
  std::vector<std::string> systems;
  for (int s = 0; s < n_systems; ++s) systems.push_back("sys" + std::to_string(s));
  p.systems.insert(systems.begin(), systems.end());
  for (int a = 0; a < shape.annotators; ++a) p.annotators.insert("rater" + std::to_string(a));

  const int n_docs = rng.Int(shape.min_docs, shape.max_docs);
  for (int d = 0; d < n_docs; ++d) {
    Document doc{"doc" + std::to_string(d), {}};
    const int n_segs = rng.Int(shape.min_segments, shape.max_segments);
    for (int s = 0; s < n_segs; ++s) doc.seg_ids.push_back(std::to_string(s + 1));
    for (const std::string& seg_id : doc.seg_ids) {
      const SegmentRef seg{doc.doc_id, seg_id};
      const std::string source =
          JoinWords(RandomWords(rng, shape.min_words, shape.max_words, shape.ascii_only));
      const auto base = RandomWords(rng, shape.min_words, shape.max_words, shape.ascii_only);
      for (const std::string& system : systems) {
        p.units.push_back(
            {system, seg, source, JoinWords(Perturb(rng, base, shape.ascii_only))});
      }
    }
    p.documents.push_back(std::move(doc));
  }

  std::set<std::pair<std::string, std::string>> used;
  const int n_pairs =
      std::min(rng.Int(shape.min_pairs, shape.max_pairs), n_systems * (n_systems - 1) / 2);
  static const std::vector<std::string> kGroups = {"top2", "high-sim", "low-sim", ""};
  while (static_cast<int>(p.designated_pairs.size()) < n_pairs) {
    std::string a = rng.Pick(systems);
    std::string b = rng.Pick(systems);
    if (a == b || used.contains({std::min(a, b), std::max(a, b)})) continue;
    used.insert({std::min(a, b), std::max(a, b)});
    p.designated_pairs.push_back({a, b, rng.Pick(kGroups)});
  }

  std::set<std::string> pair_systems;
  for (const SystemPair& pair : p.designated_pairs) {
    pair_systems.insert(pair.first);
    pair_systems.insert(pair.second);
  }
  auto unit = [&](const std::string& system, const SegmentRef& seg) -> const TranslationUnit& {
    for (const TranslationUnit& u : p.units) {
      if (u.system == system && u.segment == seg) return u;
    }
    std::abort();
  };
  static const std::vector<RrValue> kValues = {RrValue::kAMuchBetter, RrValue::kABetter,
                                               RrValue::kSame, RrValue::kBBetter,
                                               RrValue::kBMuchBetter};
  for (const std::string& annotator : p.annotators) {
    for (const Document& doc : p.documents) {
      for (const std::string& seg_id : doc.seg_ids) {
        const SegmentRef seg{doc.doc_id, seg_id};
        for (const std::string& system : pair_systems) {
          if (!rng.Chance(shape.coverage)) continue;
          MqmAnnotation a{annotator, Setting::kMqm, system, seg, {}, std::nullopt};
          AddErrors(rng, shape, unit(system, seg), a);
          p.mqm.push_back(std::move(a));
        }
        for (const SystemPair& pair : p.designated_pairs) {
          if (rng.Chance(shape.coverage)) {
            for (const auto& [x, y] : {std::pair{pair.first, pair.second}, {pair.second, pair.first}}) {
              MqmAnnotation a{annotator, Setting::kSxsMqm, x, seg, {}, y};
              AddErrors(rng, shape, unit(x, seg), a);
              p.mqm.push_back(std::move(a));
            }
          }
          if (rng.Chance(shape.coverage)) {
            const bool flip = rng.Chance(0.5);
            p.rr.push_back({annotator, seg, flip ? pair.second : pair.first,
                            flip ? pair.first : pair.second, rng.Pick(kValues)});
          }
        }
      }
    }
  }
  Canonicalize(p);
  return p;
}

}  // namespace sxseval::testing
