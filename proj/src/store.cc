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

#include "sxseval/store.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <map>

#include "sxseval/digest.h"
#include "sxseval/error.h"
#include "sxseval/ingest.h"

namespace sxseval {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Checksum(int64_t seq, const json& entry) {
  return Sha256Hex(std::to_string(seq) + "\n" + entry.dump());
}

struct ScanResult {
  std::vector<JournalEntry> entries;
  size_t valid_bytes = 0;
  bool torn = false;
};

ScanResult Scan(const fs::path& file) {
  ScanResult out;
  if (!fs::exists(file)) return out;
  std::string bytes;
  try {
    bytes = ReadFile(file);
  } catch (const Error& e) {
    throw Error("E_STORE_CORRUPT", "journal unreadable", e.detail());
  }
  size_t pos = 0;
  int64_t line = 0;
  while (pos < bytes.size()) {
    const size_t nl = bytes.find('\n', pos);
    if (nl == std::string::npos) {
      out.torn = true;
      break;
    }
    ++line;
    const std::string where = file.filename().string() + " line " + std::to_string(line);
    json record;
    try {
      record = json::parse(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                           bytes.begin() + static_cast<std::ptrdiff_t>(nl));
    } catch (const json::exception&) {
      throw Error("E_STORE_CORRUPT", "unparsable journal line", where);
    }
    if (!record.is_object() || !record.contains("seq") || !record["seq"].is_number_integer() ||
        !record.contains("sha256") || !record["sha256"].is_string() ||
        !record.contains("entry")) {
      throw Error("E_STORE_CORRUPT", "malformed journal record", where);
    }
    const int64_t seq = record["seq"].get<int64_t>();
    const int64_t expected = static_cast<int64_t>(out.entries.size()) + 1;
    if (seq != expected) {
      throw Error("E_STORE_CORRUPT", "journal sequence gap",
                  where + ": expected " + std::to_string(expected) + ", found " +
                      std::to_string(seq));
    }
    if (record["sha256"].get<std::string>() != Checksum(seq, record["entry"])) {
      throw Error("E_STORE_CORRUPT", "journal checksum mismatch", where);
    }
    out.entries.push_back(JournalEntry{seq, std::move(record["entry"])});
    pos = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

[[noreturn]] void ThrowWrite(const fs::path& file, const char* what) {
  throw Error("E_STORE_WRITE", what, file.string() + ": " + std::strerror(errno));
}

json PairsJson(const std::vector<SystemPair>& pairs) {
  json out = json::array();
  for (const SystemPair& p : pairs) {
    out.push_back({{"a", p.first}, {"b", p.second}, {"group", p.group}});
  }
  return out;
}

template <typename T>
T Field(const json& meta, const char* key) {
  if (!meta.contains(key)) {
    throw Error("E_STORE_CORRUPT", "project.json lacks a required field", key);
  }
  return meta.at(key).get<T>();
}

void MergeUnits(std::map<std::pair<std::string, SegmentRef>, TranslationUnit>& units,
                const std::vector<TranslationUnit>& more, std::string_view file) {
  for (const TranslationUnit& u : more) {
    auto [it, inserted] = units.emplace(std::make_pair(u.system, u.segment), u);
    if (!inserted && it->second != u) {
      throw Error("E_UNIT_CONFLICT", "unit text differs between files",
                  std::string(file) + ": " + u.system + " " + u.segment.doc_id + "/" +
                      u.segment.seg_id);
    }
  }
}

std::optional<std::string> ReadIfExists(const fs::path& file) {
  if (!fs::exists(file)) return std::nullopt;
  return ReadFile(file);
}

}  // namespace

fs::path JournalPath(const fs::path& root) { return root / "log" / "journal.jsonl"; }

json ProjectMetadata(const Project& project) {
  json docs = json::array();
  for (const Document& d : project.documents) {
    docs.push_back({{"doc_id", d.doc_id}, {"seg_ids", d.seg_ids}});
  }
  return {
      {"schema_version", kSchemaVersion},
      {"language_pair", project.language_pair},
      {"systems", project.systems},
      {"annotators", project.annotators},
      {"designated_pairs", PairsJson(project.designated_pairs)},
      {"documents", docs},
  };
}

Project LoadProject(const fs::path& root) {
  const fs::path meta_file = root / "project.json";
  if (!fs::exists(meta_file)) {
    throw Error("E_STORE_CORRUPT", "not a project store", "missing project.json");
  }
  Project p;
  bool have_documents = false;
  try {
    const json meta = json::parse(ReadFile(meta_file));
    if (!meta.is_object()) throw Error("E_STORE_CORRUPT", "project.json is not an object");
    if (!meta.contains("schema_version") || !meta["schema_version"].is_number_integer() ||
        meta["schema_version"].get<int>() != kSchemaVersion) {
      throw Error("E_VERSION", "unsupported schema_version",
                  meta.contains("schema_version") ? meta["schema_version"].dump() : "absent");
    }
    p.language_pair = Field<std::string>(meta, "language_pair");
    p.systems = Field<std::set<std::string>>(meta, "systems");
    p.annotators = meta.value("annotators", std::set<std::string>{});
    for (const json& pair : meta.value("designated_pairs", json::array())) {
      if (pair.is_array() && pair.size() == 2) {
        p.designated_pairs.push_back({pair[0].get<std::string>(), pair[1].get<std::string>(), ""});
      } else {
        p.designated_pairs.push_back({pair.at("a").get<std::string>(),
                                      pair.at("b").get<std::string>(),
                                      pair.value("group", std::string())});
      }
    }
    if (meta.contains("documents")) {
      have_documents = true;
      for (const json& d : meta["documents"]) {
        p.documents.push_back(
            {d.at("doc_id").get<std::string>(), d.at("seg_ids").get<std::vector<std::string>>()});
      }
    }
  } catch (const json::exception& e) {
    throw Error("E_STORE_CORRUPT", "invalid project.json", e.what());
  }

  std::map<std::pair<std::string, SegmentRef>, TranslationUnit> units;
  std::vector<SegmentRef> unit_order;
  if (auto bytes = ReadIfExists(root / "units.tsv")) {
    const auto listed = ParseUnitsTsv(*bytes);
    for (const TranslationUnit& u : listed) unit_order.push_back(u.segment);
    MergeUnits(units, listed, "units.tsv");
  }
  for (Setting setting : {Setting::kMqm, Setting::kSxsMqm}) {
    const char* name = setting == Setting::kMqm ? "mqm.tsv" : "sxs_mqm.tsv";
    if (auto bytes = ReadIfExists(root / name)) {
      MqmTsvData data = ParseMqmTsv(*bytes, setting);
      for (const TranslationUnit& u : data.units) unit_order.push_back(u.segment);
      MergeUnits(units, data.units, name);
      for (MqmAnnotation& a : data.annotations) p.mqm.push_back(std::move(a));
    }
  }
  if (auto bytes = ReadIfExists(root / "rr.tsv")) p.rr = ParseRrTsv(*bytes);
  for (auto& [key, unit] : units) p.units.push_back(std::move(unit));

  if (!have_documents) {
    std::map<std::string, size_t> doc_pos;
    std::set<SegmentRef> seen;
    for (const SegmentRef& s : unit_order) {
      if (!seen.insert(s).second) continue;
      auto [it, inserted] = doc_pos.emplace(s.doc_id, p.documents.size());
      if (inserted) p.documents.push_back({s.doc_id, {}});
      p.documents[it->second].seg_ids.push_back(s.seg_id);
    }
  }
  Canonicalize(p);

  if (fs::exists(JournalPath(root))) Journal::Read(JournalPath(root));
  return p;
}

void SaveProject(const Project& project, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error("E_STORE_WRITE", "cannot create store directory", root.string());
  WriteFileAtomic(root / "project.json", ProjectMetadata(project).dump(2) + "\n");
  WriteFileAtomic(root / "units.tsv", WriteUnitsTsv(project.units));
  WriteFileAtomic(root / "mqm.tsv", WriteMqmTsv(project.mqm, project.units, Setting::kMqm));
  WriteFileAtomic(root / "sxs_mqm.tsv",
                  WriteMqmTsv(project.mqm, project.units, Setting::kSxsMqm));
  WriteFileAtomic(root / "rr.tsv", WriteRrTsv(project.rr));
}

std::vector<JournalEntry> Journal::Read(const fs::path& file) {
  return Scan(file).entries;
}

Journal::Journal(fs::path file) : file_(std::move(file)) {
  std::error_code ec;
  fs::create_directories(file_.parent_path(), ec);
  if (ec) throw Error("E_STORE_WRITE", "cannot create journal directory", file_.string());
  ScanResult scan = Scan(file_);
  if (scan.torn && ::truncate(file_.c_str(), static_cast<off_t>(scan.valid_bytes)) != 0) {
    ThrowWrite(file_, "cannot drop torn journal tail");
  }
  entries_ = std::move(scan.entries);
  fd_ = ::open(file_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) ThrowWrite(file_, "cannot open journal");
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

int64_t Journal::Append(const json& entry) {
  const int64_t seq = static_cast<int64_t>(entries_.size()) + 1;
  const json record = {{"seq", seq}, {"sha256", Checksum(seq, entry)}, {"entry", entry}};
  const std::string line = record.dump() + "\n";
  size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowWrite(file_, "journal append failed");
    }
    written += static_cast<size_t>(n);
  }
  if (::fsync(fd_) != 0) ThrowWrite(file_, "journal fsync failed");
  entries_.push_back(JournalEntry{seq, entry});
  return seq;
}

}  // namespace sxseval
