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

#include "sxseval/campaign.h"

#include <algorithm>
#include <mutex>
#include <random>
#include <set>
#include <tuple>

#include "sxseval/digest.h"
#include "sxseval/error.h"

namespace sxseval {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kRrChoices[] = {"left_much_better", "left_better", "same",
                                           "right_better", "right_much_better"};

std::vector<std::string> MqmSystems(const Project& project) {
  std::set<std::string> systems;
  for (const SystemPair& p : project.designated_pairs) {
    systems.insert(p.first);
    systems.insert(p.second);
  }
  if (systems.empty()) systems = project.systems;
  return {systems.begin(), systems.end()};
}

// Identifies the material of a task independently of side placement.
using Item = std::tuple<Setting, SegmentRef, std::string, std::string>;

Item ItemOf(Setting setting, const SegmentRef& seg, const std::string& x, const std::string& y) {
  return x < y ? Item{setting, seg, x, y} : Item{setting, seg, y, x};
}

// Every item the project calls for in one document, per setting.
std::set<Item> ExpectedItems(const Project& project, const ProjectIndex& index,
                             const Document& doc) {
  std::set<Item> items;
  for (const std::string& seg_id : doc.seg_ids) {
    const SegmentRef seg{doc.doc_id, seg_id};
    for (const std::string& system : MqmSystems(project)) {
      if (index.Unit(system, seg)) items.insert(ItemOf(Setting::kMqm, seg, system, ""));
    }
    for (const SystemPair& p : project.designated_pairs) {
      if (!index.Unit(p.first, seg) || !index.Unit(p.second, seg)) continue;
      items.insert(ItemOf(Setting::kSxsMqm, seg, p.first, p.second));
      items.insert(ItemOf(Setting::kSxsRr, seg, p.first, p.second));
    }
  }
  return items;
}

std::optional<RrValue> RrFromChoice(std::string_view choice) {
  for (size_t i = 0; i < std::size(kRrChoices); ++i) {
    if (kRrChoices[i] == choice) return static_cast<RrValue>(i);
  }
  return std::nullopt;
}

[[noreturn]] void Invalid(const std::string& message, const std::string& detail = "") {
  throw Error("E_VALIDATION", message, detail);
}

// Parses one submitted error; `sides` is 1 for MQM tasks, 2 otherwise.
json NormalizeError(const json& e, int sides) {
  if (!e.is_object()) Invalid("error entry is not an object");
  const std::string target = e.value("target", std::string("left"));
  if (target != "left" && (target != "right" || sides < 2)) {
    Invalid("unknown target panel", target);
  }
  const std::string side = e.value("side", std::string("target"));
  if (side != "target" && side != "source") Invalid("side must be source or target", side);
  const bool unspecified = e.value("unspecified", false);
  int64_t start = 0;
  int64_t end = 0;
  if (!unspecified) {
    if (!e.contains("start") || !e.contains("end") || !e["start"].is_number_integer() ||
        !e["end"].is_number_integer()) {
      Invalid("span offsets missing");
    }
    start = e["start"].get<int64_t>();
    end = e["end"].get<int64_t>();
    if (start < 0 || end < 0) Invalid("negative span offset");
  }
  if (!e.contains("category") || !e["category"].is_string()) Invalid("category missing");
  const auto category = ParseCategoryPath(e["category"].get<std::string>());
  if (!category) Invalid("unknown category", e["category"].get<std::string>());
  if (!e.contains("severity") || !e["severity"].is_string()) Invalid("severity missing");
  const auto severity = ParseSeverity(e["severity"].get<std::string>());
  if (!severity) Invalid("unknown severity", e["severity"].get<std::string>());
  return {{"target", target},         {"side", side},
          {"start", start},           {"end", end},
          {"category", Path(*category)}, {"severity", std::string(Name(*severity))},
          {"unspecified", unspecified}};
}

ErrorSpan SpanFromEntry(const json& e) {
  ErrorSpan s;
  s.side = e.at("side").get<std::string>() == "source" ? Side::kSource : Side::kTarget;
  s.start = e.at("start").get<size_t>();
  s.end = e.at("end").get<size_t>();
  s.category = *ParseCategoryPath(e.at("category").get<std::string>());
  s.severity = *ParseSeverity(e.at("severity").get<std::string>());
  s.unspecified_span = e.at("unspecified").get<bool>();
  return s;
}

// Annotations (or the judgment) a journal entry stands for.
void EntryToResults(const json& entry, std::vector<MqmAnnotation>& mqm,
                    std::vector<RrJudgment>& rr) {
  const Setting setting = *ParseSetting(entry.at("setting").get<std::string>());
  const SegmentRef seg{entry.at("doc_id").get<std::string>(), entry.at("seg_id").get<std::string>()};
  const std::string annotator = entry.at("annotator").get<std::string>();
  const std::string left = entry.at("left").get<std::string>();
  const std::string right = entry.at("right").get<std::string>();
  if (setting == Setting::kSxsRr) {
    rr.push_back({annotator, seg, left, right, *RrFromChoice(entry.at("rr").get<std::string>())});
    return;
  }
  MqmAnnotation l{annotator, setting, left, seg, {}, std::nullopt};
  MqmAnnotation r{annotator, setting, right, seg, {}, std::nullopt};
  if (setting == Setting::kSxsMqm) {
    l.pair_partner = right;
    r.pair_partner = left;
  }
  for (const json& e : entry.at("errors")) {
    (e.at("target").get<std::string>() == "right" ? r : l).errors.push_back(SpanFromEntry(e));
  }
  SortErrors(l.errors);
  SortErrors(r.errors);
  mqm.push_back(std::move(l));
  if (setting == Setting::kSxsMqm) mqm.push_back(std::move(r));
}

json Counter(int64_t done, int64_t total) { return {{"done", done}, {"total", total}}; }

}  // namespace

std::string_view Name(SettingOrder order) {
  return order == SettingOrder::kSequential ? "sequential" : "interleaved";
}

fs::path AssignmentPath(const fs::path& root) { return root / "assignments.json"; }

Assignment AssignTasks(const Project& project, const std::vector<std::string>& pool,
                       const AssignOptions& options) {
  if (options.k < 1) throw Error("E_BAD_ARGUMENT", "k must be positive");
  const std::set<std::string> unique(pool.begin(), pool.end());
  if (unique.size() < static_cast<size_t>(options.k)) {
    throw Error("E_POOL_TOO_SMALL", "annotator pool smaller than k",
                std::to_string(unique.size()) + " < " + std::to_string(options.k));
  }
  Assignment out;
  out.seed = options.seed;
  out.k = options.k;
  out.order = options.order;
  out.pool.assign(unique.begin(), unique.end());

  std::seed_seq seq{static_cast<uint32_t>(options.seed), static_cast<uint32_t>(options.seed >> 32)};
  std::mt19937_64 gen(seq);
  std::vector<std::string> shuffled = out.pool;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  std::map<std::string, size_t> rank;
  for (size_t i = 0; i < shuffled.size(); ++i) rank[shuffled[i]] = i;

  std::map<std::string, int64_t> load;
  for (const std::string& a : out.pool) load[a] = 0;
  for (const Document& doc : project.documents) {
    std::vector<std::string> order = shuffled;
    std::stable_sort(order.begin(), order.end(), [&](const std::string& x, const std::string& y) {
      return std::tie(load[x], rank[x]) < std::tie(load[y], rank[y]);
    });
    order.resize(static_cast<size_t>(options.k));
    for (const std::string& a : order) load[a] += static_cast<int64_t>(doc.seg_ids.size());
    std::sort(order.begin(), order.end());
    out.doc_annotators[doc.doc_id] = std::move(order);
  }

  // Left/right placement, drawn in a fixed order so it is shared by every
  // annotator who sees the segment.
  const ProjectIndex index(project);
  std::map<Item, bool> swap;
  for (Setting setting : {Setting::kSxsMqm, Setting::kSxsRr}) {
    for (const Document& doc : project.documents) {
      for (const SystemPair& p : project.designated_pairs) {
        for (const std::string& seg_id : doc.seg_ids) {
          swap[ItemOf(setting, {doc.doc_id, seg_id}, p.first, p.second)] = (gen() >> 17) & 1;
        }
      }
    }
  }

  const std::vector<std::string> mqm_systems = MqmSystems(project);
  for (const std::string& annotator : out.pool) {
    std::vector<Task> queue;
    auto block = [&](Setting setting, const Document& doc) {
      if (setting == Setting::kMqm) {
        for (const std::string& system : mqm_systems) {
          for (const std::string& seg_id : doc.seg_ids) {
            const SegmentRef seg{doc.doc_id, seg_id};
            if (!index.Unit(system, seg)) continue;
            queue.push_back({"", annotator, setting, seg, system, "", 0});
          }
        }
        return;
      }
      for (const SystemPair& p : project.designated_pairs) {
        for (const std::string& seg_id : doc.seg_ids) {
          const SegmentRef seg{doc.doc_id, seg_id};
          if (!index.Unit(p.first, seg) || !index.Unit(p.second, seg)) continue;
          const bool flip = swap.at(ItemOf(setting, seg, p.first, p.second));
          queue.push_back({"", annotator, setting, seg, flip ? p.second : p.first,
                           flip ? p.first : p.second, 0});
        }
      }
    };
    std::vector<const Document*> docs;
    for (const Document& doc : project.documents) {
      const auto& who = out.doc_annotators[doc.doc_id];
      if (std::binary_search(who.begin(), who.end(), annotator)) docs.push_back(&doc);
    }
    if (options.order == SettingOrder::kSequential) {
      for (Setting s : kAllSettings) {
        for (const Document* doc : docs) block(s, *doc);
      }
    } else {
      for (const Document* doc : docs) {
        for (Setting s : kAllSettings) block(s, *doc);
      }
    }
    for (size_t i = 0; i < queue.size(); ++i) {
      queue[i].position = static_cast<int64_t>(i);
      queue[i].id = "t" + std::to_string(out.tasks.size());
      out.tasks.push_back(std::move(queue[i]));
    }
  }
  return out;
}

std::vector<Violation> ValidateAssignment(const Project& project, const Assignment& assignment) {
  std::vector<Violation> out;
  const ProjectIndex index(project);
  const std::set<std::string> pool(assignment.pool.begin(), assignment.pool.end());
  std::map<std::string, int64_t> load;
  for (const std::string& a : pool) load[a] = 0;
  size_t max_doc = 0;

  for (const Document& doc : project.documents) {
    max_doc = std::max(max_doc, doc.seg_ids.size());
    auto it = assignment.doc_annotators.find(doc.doc_id);
    if (it == assignment.doc_annotators.end()) {
      out.push_back({"E_DOC_ANNOTATORS", doc.doc_id + ": unassigned"});
      continue;
    }
    const std::set<std::string> who(it->second.begin(), it->second.end());
    if (who.size() != it->second.size() || who.size() != static_cast<size_t>(assignment.k) ||
        !std::includes(pool.begin(), pool.end(), who.begin(), who.end())) {
      out.push_back({"E_DOC_ANNOTATORS", doc.doc_id});
    }
    for (const std::string& a : who) load[a] += static_cast<int64_t>(doc.seg_ids.size());
  }

  std::set<std::string> ids;
  std::map<Item, std::multiset<std::string>> coverage;
  std::map<std::string, std::vector<const Task*>> queues;
  for (const Task& t : assignment.tasks) {
    if (!ids.insert(t.id).second) out.push_back({"E_DUPLICATE_TASK", t.id});
    auto it = assignment.doc_annotators.find(t.segment.doc_id);
    if (it == assignment.doc_annotators.end() ||
        std::find(it->second.begin(), it->second.end(), t.annotator) == it->second.end()) {
      out.push_back({"E_NOT_WITHIN_SUBJECT", t.id});
    }
    coverage[ItemOf(t.setting, t.segment, t.left, t.right)].insert(t.annotator);
    queues[t.annotator].push_back(&t);
  }

  for (const Document& doc : project.documents) {
    auto it = assignment.doc_annotators.find(doc.doc_id);
    if (it == assignment.doc_annotators.end()) continue;
    const std::multiset<std::string> who(it->second.begin(), it->second.end());
    for (const Item& item : ExpectedItems(project, index, doc)) {
      auto c = coverage.find(item);
      if (c == coverage.end() || c->second != who) {
        out.push_back({"E_INCOMPLETE", std::string(Name(std::get<0>(item))) + "/" +
                                           doc.doc_id + "/" + std::get<1>(item).seg_id + "/" +
                                           std::get<2>(item) + "~" + std::get<3>(item)});
      }
      if (c != coverage.end()) coverage.erase(c);
    }
  }
  for (const auto& [item, who] : coverage) {
    out.push_back({"E_UNEXPECTED_TASK", std::string(Name(std::get<0>(item))) + "/" +
                                            std::get<1>(item).doc_id + "/" +
                                            std::get<1>(item).seg_id});
  }

  for (auto& [annotator, queue] : queues) {
    std::sort(queue.begin(), queue.end(),
              [](const Task* x, const Task* y) { return x->position < y->position; });
    std::set<std::pair<std::string, Setting>> finished;
    std::optional<std::pair<std::string, Setting>> current;
    for (size_t i = 0; i < queue.size(); ++i) {
      if (queue[i]->position != static_cast<int64_t>(i)) {
        out.push_back({"E_QUEUE_POSITION", queue[i]->id});
      }
      const std::pair<std::string, Setting> block{queue[i]->segment.doc_id, queue[i]->setting};
      if (current != block) {
        if (current) finished.insert(*current);
        if (finished.contains(block)) {
          out.push_back({"E_NOT_CONTIGUOUS", annotator + "/" + block.first + "/" +
                                                 std::string(Name(block.second))});
        }
        current = block;
      }
    }
  }

  if (!load.empty()) {
    auto [lo, hi] = std::minmax_element(load.begin(), load.end(), [](const auto& x, const auto& y) {
      return x.second < y.second;
    });
    if (hi->second - lo->second > static_cast<int64_t>(max_doc)) {
      out.push_back({"E_LOAD_BALANCE", hi->first + " vs " + lo->first});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

json AssignmentToJson(const Assignment& a) {
  json tasks = json::array();
  for (const Task& t : a.tasks) {
    tasks.push_back({{"id", t.id},
                     {"annotator", t.annotator},
                     {"setting", std::string(Name(t.setting))},
                     {"doc_id", t.segment.doc_id},
                     {"seg_id", t.segment.seg_id},
                     {"left", t.left},
                     {"right", t.right},
                     {"position", t.position}});
  }
  return {{"schema_version", kSchemaVersion},
          {"seed", a.seed},
          {"k", a.k},
          {"order", std::string(Name(a.order))},
          {"pool", a.pool},
          {"doc_annotators", a.doc_annotators},
          {"tasks", tasks}};
}

Assignment AssignmentFromJson(const json& j) {
  try {
    Assignment a;
    a.seed = j.at("seed").get<uint64_t>();
    a.k = j.at("k").get<int>();
    a.order = j.at("order").get<std::string>() == "interleaved" ? SettingOrder::kInterleaved
                                                                 : SettingOrder::kSequential;
    a.pool = j.at("pool").get<std::vector<std::string>>();
    a.doc_annotators =
        j.at("doc_annotators").get<std::map<std::string, std::vector<std::string>>>();
    for (const json& t : j.at("tasks")) {
      const auto setting = ParseSetting(t.at("setting").get<std::string>());
      if (!setting) throw Error("E_STORE_CORRUPT", "bad task setting in assignments.json");
      a.tasks.push_back({t.at("id").get<std::string>(), t.at("annotator").get<std::string>(),
                         *setting,
                         {t.at("doc_id").get<std::string>(), t.at("seg_id").get<std::string>()},
                         t.at("left").get<std::string>(), t.at("right").get<std::string>(),
                         t.at("position").get<int64_t>()});
    }
    return a;
  } catch (const json::exception& e) {
    throw Error("E_STORE_CORRUPT", "invalid assignments.json", e.what());
  }
}

Campaign::Campaign(fs::path root) : root_(std::move(root)) {
  base_ = LoadProject(root_);
  index_ = std::make_unique<ProjectIndex>(base_);
  if (!fs::exists(AssignmentPath(root_))) {
    throw Error("E_NO_ASSIGNMENT", "campaign has no task assignment", "run `sxseval assign`");
  }
  try {
    assignment_ = AssignmentFromJson(json::parse(ReadFile(AssignmentPath(root_))));
  } catch (const json::exception& e) {
    throw Error("E_STORE_CORRUPT", "unparsable assignments.json", e.what());
  }
  for (size_t i = 0; i < assignment_.tasks.size(); ++i) {
    const Task& t = assignment_.tasks[i];
    task_pos_.emplace(t.id, i);
    queues_[t.annotator].push_back(i);
  }
  for (const std::string& a : assignment_.pool) queues_[a];
  for (auto& [annotator, queue] : queues_) {
    std::sort(queue.begin(), queue.end(), [&](size_t x, size_t y) {
      return assignment_.tasks[x].position < assignment_.tasks[y].position;
    });
  }
  journal_ = std::make_unique<Journal>(JournalPath(root_));
  for (const JournalEntry& e : journal_->entries()) {
    if (e.entry.value("type", "") != "submission") continue;
    if (!task_pos_.contains(e.entry.value("task_id", ""))) {
      throw Error("E_STORE_CORRUPT", "journal refers to an unknown task",
                  "seq " + std::to_string(e.seq));
    }
    Apply(e.entry, e.seq);
  }
}

const Task& Campaign::FindTask(const std::string& id) const {
  auto it = task_pos_.find(id);
  if (it == task_pos_.end()) throw Error("E_UNKNOWN_TASK", "no such task", id);
  return assignment_.tasks[it->second];
}

json Campaign::TaskPayload(const Task& t) const {
  const TranslationUnit* left = index_->Unit(t.left, t.segment);
  json targets = json::array();
  targets.push_back({{"text", left ? left->target : ""}});
  if (t.setting != Setting::kMqm) {
    const TranslationUnit* right = index_->Unit(t.right, t.segment);
    targets.push_back({{"text", right ? right->target : ""}});
  }
  json payload = {{"id", t.id},
                  {"annotator", t.annotator},
                  {"setting", std::string(Name(t.setting))},
                  {"doc_id", t.segment.doc_id},
                  {"seg_id", t.segment.seg_id},
                  {"source", left ? left->source : ""},
                  {"targets", targets},
                  {"position", t.position},
                  {"queue_length", queues_.at(t.annotator).size()}};
  if (t.setting == Setting::kSxsRr) {
    payload["rr_choices"] = std::vector<std::string>(std::begin(kRrChoices), std::end(kRrChoices));
  }
  return payload;
}

std::optional<json> Campaign::NextTask(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  auto it = queues_.find(annotator);
  if (it == queues_.end()) throw Error("E_UNKNOWN_ANNOTATOR", "annotator not in pool", annotator);
  for (size_t i : it->second) {
    const Task& t = assignment_.tasks[i];
    if (!latest_.contains(t.id)) return TaskPayload(t);
  }
  return std::nullopt;
}

json Campaign::BuildEntry(const Task& task, const json& body) const {
  json entry = {{"type", "submission"},
                {"task_id", task.id},
                {"annotator", task.annotator},
                {"setting", std::string(Name(task.setting))},
                {"doc_id", task.segment.doc_id},
                {"seg_id", task.segment.seg_id},
                {"left", task.left},
                {"right", task.right}};
  const json& ts = body.contains("client_timestamp") ? body["client_timestamp"] : json();
  entry["client_timestamp"] = ts.is_string() || ts.is_number() ? ts : json();

  if (task.setting == Setting::kSxsRr) {
    if (body.contains("errors") && !body["errors"].empty()) {
      Invalid("error spans are not part of a relative-ranking task");
    }
    if (!body.contains("rr") || !body["rr"].is_string() ||
        !RrFromChoice(body["rr"].get<std::string>())) {
      Invalid("rr must be one of the five choices");
    }
    entry["rr"] = body["rr"];
    return entry;
  }
  if (body.contains("rr")) Invalid("an MQM task takes error spans, not a ranking");
  if (!body.contains("errors") || !body["errors"].is_array()) Invalid("errors array missing");
  json errors = json::array();
  const int sides = task.setting == Setting::kMqm ? 1 : 2;
  for (const json& e : body["errors"]) errors.push_back(NormalizeError(e, sides));
  entry["errors"] = errors;

  std::vector<MqmAnnotation> mqm;
  std::vector<RrJudgment> rr;
  EntryToResults(entry, mqm, rr);
  std::vector<std::string> problems;
  for (const MqmAnnotation& a : mqm) {
    const TranslationUnit* unit = index_->Unit(a.system, a.segment);
    if (unit == nullptr) Invalid("task refers to a missing translation unit");
    const std::string panel = a.system == task.left ? "left" : "right";
    for (const Violation& v : ValidateAnnotation(a, *unit)) {
      problems.push_back(v.code + "@" + panel + ":" + v.location);
    }
  }
  if (!problems.empty()) {
    std::string detail;
    for (const std::string& p : problems) detail += (detail.empty() ? "" : "; ") + p;
    Invalid("submission violates annotation invariants", detail);
  }
  return entry;
}

void Campaign::Apply(const json& entry, int64_t seq) {
  const std::string id = entry.at("task_id").get<std::string>();
  revisions_[id] = entry.value("revision", int64_t{0});
  seqs_[id] = seq;
  latest_[id] = entry;
}

SubmitAck Campaign::Submit(const json& body) {
  if (!body.is_object() || !body.contains("task_id") || !body["task_id"].is_string() ||
      !body.contains("annotator") || !body["annotator"].is_string()) {
    Invalid("submission needs task_id and annotator");
  }
  std::unique_lock lock(mu_);
  const Task& task = FindTask(body["task_id"].get<std::string>());
  if (body["annotator"].get<std::string>() != task.annotator) {
    throw Error("E_WRONG_ANNOTATOR", "task belongs to another annotator", task.id);
  }
  json entry = BuildEntry(task, body);
  auto prior = latest_.find(task.id);
  if (prior != latest_.end() && body.contains("revision") && body["revision"].is_number_integer() &&
      body["revision"].get<int64_t>() == revisions_[task.id]) {
    json same = entry;
    same["revision"] = revisions_[task.id];
    same["client_timestamp"] = prior->second["client_timestamp"];
    if (same == prior->second) return {task.id, seqs_[task.id], revisions_[task.id]};
  }
  const int64_t revision = prior != latest_.end() ? revisions_[task.id] + 1 : 0;
  entry["revision"] = revision;
  const int64_t seq = journal_->Append(entry);
  Apply(entry, seq);
  return {task.id, seq, revision};
}

json Campaign::Progress() const {
  std::shared_lock lock(mu_);
  std::map<std::string, std::map<Setting, std::pair<int64_t, int64_t>>> per;
  std::map<Setting, std::pair<int64_t, int64_t>> settings;
  for (const std::string& a : assignment_.pool) {
    for (Setting s : kAllSettings) per[a][s] = {0, 0};
  }
  for (Setting s : kAllSettings) settings[s] = {0, 0};
  int64_t done = 0;
  for (const Task& t : assignment_.tasks) {
    const bool finished = latest_.contains(t.id);
    auto& [d, n] = per[t.annotator][t.setting];
    d += finished;
    ++n;
    settings[t.setting].first += finished;
    ++settings[t.setting].second;
    done += finished;
  }
  json out = {{"done", done}, {"total", assignment_.tasks.size()}};
  for (const auto& [s, c] : settings) out["settings"][std::string(Name(s))] = Counter(c.first, c.second);
  out["annotators"] = json::object();
  for (const auto& [a, by_setting] : per) {
    int64_t ad = 0;
    int64_t an = 0;
    json row;
    for (const auto& [s, c] : by_setting) {
      row["settings"][std::string(Name(s))] = Counter(c.first, c.second);
      ad += c.first;
      an += c.second;
    }
    row["done"] = ad;
    row["total"] = an;
    out["annotators"][a] = row;
  }
  return out;
}

Project Campaign::MergedLocked() const {
  using MqmKey = std::tuple<Setting, std::string, std::string, SegmentRef, std::string>;
  using RrKey = std::tuple<std::string, SegmentRef, std::string, std::string>;
  std::map<MqmKey, MqmAnnotation> mqm;
  std::map<RrKey, RrJudgment> rr;
  auto put_mqm = [&](MqmAnnotation a) {
    MqmKey key{a.setting, a.annotator, a.system, a.segment, a.pair_partner.value_or("")};
    mqm.insert_or_assign(key, std::move(a));
  };
  auto put_rr = [&](RrJudgment j) {
    const auto& [lo, hi] = std::minmax(j.system_a, j.system_b);
    RrKey key{j.annotator, j.segment, lo, hi};
    rr.insert_or_assign(key, std::move(j));
  };
  for (const MqmAnnotation& a : base_.mqm) put_mqm(a);
  for (const RrJudgment& j : base_.rr) put_rr(j);
  for (const auto& [id, entry] : latest_) {
    std::vector<MqmAnnotation> m;
    std::vector<RrJudgment> r;
    EntryToResults(entry, m, r);
    for (MqmAnnotation& a : m) put_mqm(std::move(a));
    for (RrJudgment& j : r) put_rr(std::move(j));
  }
  Project out = base_;
  out.mqm.clear();
  out.rr.clear();
  for (auto& [key, a] : mqm) out.mqm.push_back(std::move(a));
  for (auto& [key, j] : rr) out.rr.push_back(std::move(j));
  out.annotators.insert(assignment_.pool.begin(), assignment_.pool.end());
  Canonicalize(out);
  return out;
}

Project Campaign::Merged() const {
  std::shared_lock lock(mu_);
  return MergedLocked();
}

std::vector<std::string> Campaign::Export() {
  std::unique_lock lock(mu_);
  SaveProject(MergedLocked(), root_);
  return {"project.json", "units.tsv", "mqm.tsv", "sxs_mqm.tsv", "rr.tsv"};
}

json Campaign::Context(const std::string& doc_id, const std::string& task_id,
                       const std::string& annotator) const {
  std::shared_lock lock(mu_);
  auto doc = std::find_if(base_.documents.begin(), base_.documents.end(),
                          [&](const Document& d) { return d.doc_id == doc_id; });
  if (doc == base_.documents.end()) throw Error("E_UNKNOWN_DOC", "no such document", doc_id);
  const Task* task = nullptr;
  if (!task_id.empty()) {
    task = &FindTask(task_id);
    if (!annotator.empty() && annotator != task->annotator) {
      throw Error("E_WRONG_ANNOTATOR", "task belongs to another annotator", task_id);
    }
    if (task->segment.doc_id != doc_id) {
      throw Error("E_VALIDATION", "task is not in this document", task_id);
    }
  }
  json segments = json::array();
  for (const std::string& seg_id : doc->seg_ids) {
    const SegmentRef seg{doc_id, seg_id};
    json row = {{"seg_id", seg_id}, {"source", ""}, {"targets", json::array()}};
    std::vector<std::string> shown;
    if (task) {
      shown.push_back(task->left);
      if (task->setting != Setting::kMqm) shown.push_back(task->right);
      row["active"] = task->segment == seg;
    }
    for (const TranslationUnit& u : base_.units) {
      if (u.segment == seg) {
        row["source"] = u.source;
        break;
      }
    }
    for (const std::string& system : shown) {
      const TranslationUnit* u = index_->Unit(system, seg);
      row["targets"].push_back({{"text", u ? u->target : ""}});
    }
    segments.push_back(std::move(row));
  }
  return {{"doc_id", doc_id}, {"segments", segments}};
}

}  // namespace sxseval
