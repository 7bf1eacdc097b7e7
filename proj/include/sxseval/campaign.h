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

#ifndef SXSEVAL_CAMPAIGN_H_
#define SXSEVAL_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "sxseval/model.h"
#include "sxseval/store.h"

namespace sxseval {

// One unit of annotator work. Side-by-side tasks show `left` and `right`;
// MQM tasks leave `right` empty.
struct Task {
  std::string id;
  std::string annotator;
  Setting setting = Setting::kMqm;
  SegmentRef segment;
  std::string left;
  std::string right;
  int64_t position = 0;  // index in the annotator's queue

  bool operator==(const Task&) const = default;
};

enum class SettingOrder {
  kSequential,   // all MQM work, then SXS_MQM, then SXS_RR
  kInterleaved,  // per document: MQM, SXS_MQM, SXS_RR
};

struct AssignOptions {
  int k = 3;
  uint64_t seed = 0;
  SettingOrder order = SettingOrder::kSequential;
};

struct Assignment {
  uint64_t seed = 0;
  int k = 3;
  SettingOrder order = SettingOrder::kSequential;
  std::vector<std::string> pool;  // sorted
  std::map<std::string, std::vector<std::string>> doc_annotators;  // sorted ids
  std::vector<Task> tasks;  // grouped by annotator, queue order within each

  bool operator==(const Assignment&) const = default;
};

// Each document goes to the k annotators with the lowest segment load so
// far; ties fall to a seeded shuffle of the pool. The same annotators see
// every translation of the document in every setting. MQM tasks cover the
// systems of the designated pairs (all systems when there are none). Left
// and right placement is seeded per (setting, segment, pair).
// Throws E_POOL_TOO_SMALL.
Assignment AssignTasks(const Project& project, const std::vector<std::string>& pool,
                       const AssignOptions& options = {});

// Standalone check of the within-subject design, completeness, contiguity
// of (document, setting) blocks, and the load-balance bound.
std::vector<Violation> ValidateAssignment(const Project& project, const Assignment& assignment);

nlohmann::json AssignmentToJson(const Assignment& assignment);
Assignment AssignmentFromJson(const nlohmann::json& json);

std::string_view Name(SettingOrder order);

struct SubmitAck {
  std::string task_id;
  int64_t seq = 0;       // journal sequence number
  int64_t revision = 0;  // 0 for the first submission of a task
};

// The annotation service over a project store. Reads take a shared lock;
// submissions are serialized through the journal's single writer.
class Campaign {
 public:
  // Loads the store, assignments.json, and replays the journal.
  // Throws E_NO_ASSIGNMENT, E_STORE_CORRUPT.
  explicit Campaign(std::filesystem::path root);

  // Blind task payload (no system ids), or nullopt when the annotator is
  // done. Throws E_UNKNOWN_ANNOTATOR.
  std::optional<nlohmann::json> NextTask(const std::string& annotator) const;

  // A body carrying the task's current "revision" with unchanged content is
  // a client retry and is acknowledged without a new journal line.
  // Throws E_UNKNOWN_TASK, E_WRONG_ANNOTATOR, E_VALIDATION, E_STORE_WRITE.
  SubmitAck Submit(const nlohmann::json& submission);

  nlohmann::json Progress() const;

  // Folds the journal over the stored annotations (latest revision wins)
  // and rewrites the store's TSV files. Returns the files written.
  std::vector<std::string> Export();

  // Every segment of a document with the texts shown in `task_id`'s
  // panels (sources only when no task is given). Throws E_UNKNOWN_DOC,
  // E_UNKNOWN_TASK, E_WRONG_ANNOTATOR.
  nlohmann::json Context(const std::string& doc_id, const std::string& task_id = "",
                         const std::string& annotator = "") const;

  // The project as export would write it.
  Project Merged() const;

  const Assignment& assignment() const { return assignment_; }

 private:
  const Task& FindTask(const std::string& id) const;
  nlohmann::json TaskPayload(const Task& task) const;
  nlohmann::json BuildEntry(const Task& task, const nlohmann::json& submission) const;
  void Apply(const nlohmann::json& entry, int64_t seq);
  Project MergedLocked() const;

  std::filesystem::path root_;
  Project base_;
  std::unique_ptr<ProjectIndex> index_;
  Assignment assignment_;
  std::map<std::string, size_t> task_pos_;
  std::map<std::string, std::vector<size_t>> queues_;  // annotator -> task indices
  std::unique_ptr<Journal> journal_;
  std::map<std::string, nlohmann::json> latest_;  // task id -> journal entry
  std::map<std::string, int64_t> revisions_;
  std::map<std::string, int64_t> seqs_;
  mutable std::shared_mutex mu_;
};

std::filesystem::path AssignmentPath(const std::filesystem::path& root);

}  // namespace sxseval

#endif  // SXSEVAL_CAMPAIGN_H_
