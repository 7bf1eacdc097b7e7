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

#ifndef SXSEVAL_TESTS_TESTING_CAMPAIGN_FIXTURE_H_
#define SXSEVAL_TESTS_TESTING_CAMPAIGN_FIXTURE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sxseval/campaign.h"
#include "sxseval/digest.h"
#include "sxseval/store.h"
#include "testing/generators.h"

namespace sxseval::testing {

// An ASCII project with no annotations yet.
inline Project EmptyCampaignProject(Rng& rng, ProjectShape shape = {}) {
  shape.ascii_only = true;
  Project p = RandomProject(rng, shape);
  p.mqm.clear();
  p.rr.clear();
  p.annotators.clear();
  return p;
}

// Writes the store and assignments.json the way `sxseval assign` does.
inline Assignment SetUpCampaign(const std::filesystem::path& root, Project project,
                                const std::vector<std::string>& pool,
                                const AssignOptions& options = {}) {
  const Assignment a = AssignTasks(project, pool, options);
  project.annotators.insert(a.pool.begin(), a.pool.end());
  SaveProject(project, root);
  WriteFileAtomic(AssignmentPath(root), AssignmentToJson(a).dump(2) + "\n");
  return a;
}

// A valid answer to a task payload: a ranking for RR, otherwise zero or one
// error span per panel.
inline nlohmann::json AnswerFor(const nlohmann::json& task, Rng& rng) {
  nlohmann::json body = {{"task_id", task["id"]}, {"annotator", task["annotator"]}};
  if (task["setting"] == "SXS_RR") {
    static const std::vector<std::string> choices = {
        "left_much_better", "left_better", "same", "right_better", "right_much_better"};
    body["rr"] = rng.Pick(choices);
    return body;
  }
  body["errors"] = nlohmann::json::array();
  const char* panels[] = {"left", "right"};
  for (size_t i = 0; i < task["targets"].size(); ++i) {
    const std::string text = task["targets"][i]["text"];
    if (text.empty() || !rng.Chance(0.6)) continue;
    const int start = rng.Int(0, static_cast<int>(text.size()) - 1);
    body["errors"].push_back({{"target", panels[i]},
                              {"start", start},
                              {"end", rng.Int(start + 1, static_cast<int>(text.size()))},
                              {"category", rng.Chance(0.5) ? "Accuracy/Mistranslation" : "Fluency"},
                              {"severity", rng.Chance(0.5) ? "Major" : "Minor"}});
  }
  return body;
}

inline std::vector<std::string> Pool(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("ann" + std::to_string(i));
  return out;
}

}  // namespace sxseval::testing

#endif  // SXSEVAL_TESTS_TESTING_CAMPAIGN_FIXTURE_H_
