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

#ifndef SXSEVAL_STORE_H_
#define SXSEVAL_STORE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sxseval/model.h"

// On-disk project store:
//   project.json   metadata (schema_version 1)
//   units.tsv      source/target text per (system, segment)
//   mqm.tsv, sxs_mqm.tsv, rr.tsv
//   assignments.json (campaign only)
//   log/journal.jsonl  append-only submission journal
namespace sxseval {

inline constexpr int kSchemaVersion = 1;

nlohmann::json ProjectMetadata(const Project& project);

// Throws E_STORE_CORRUPT (missing or unreadable files, journal damage),
// E_VERSION, or any ingest error.
Project LoadProject(const std::filesystem::path& root);
void SaveProject(const Project& project, const std::filesystem::path& root);

struct JournalEntry {
  int64_t seq = 0;
  nlohmann::json entry;
};

// One JSON object per line: {"seq", "sha256", "entry"}. The checksum covers
// the sequence number and the serialized entry. An unterminated final line
// is a write torn by a crash and was never acknowledged; it is dropped.
class Journal {
 public:
  // Opens (creating if needed) and verifies the journal; truncates a torn
  // tail. Throws E_STORE_CORRUPT on checksum mismatch or sequence gap.
  explicit Journal(std::filesystem::path file);
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;
  ~Journal();

  // Appends and fsyncs before returning the new sequence number.
  int64_t Append(const nlohmann::json& entry);

  const std::vector<JournalEntry>& entries() const { return entries_; }
  const std::filesystem::path& file() const { return file_; }

  // Verifies without modifying the file.
  static std::vector<JournalEntry> Read(const std::filesystem::path& file);

 private:
  std::filesystem::path file_;
  std::vector<JournalEntry> entries_;
  int fd_ = -1;
};

std::filesystem::path JournalPath(const std::filesystem::path& root);

}  // namespace sxseval

#endif  // SXSEVAL_STORE_H_
