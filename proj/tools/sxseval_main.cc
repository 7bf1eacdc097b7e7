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

// Command-line entry point: analyses over a project store, campaign
// assignment, the annotation server, and export.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sxseval/agreement.h"
#include "sxseval/campaign.h"
#include "sxseval/consistency.h"
#include "sxseval/digest.h"
#include "sxseval/error.h"
#include "sxseval/ingest.h"
#include "sxseval/parallel.h"
#include "sxseval/profiling.h"
#include "sxseval/ranking.h"
#include "sxseval/reports.h"
#include "sxseval/scoring.h"
#include "sxseval/server.h"
#include "sxseval/store.h"

namespace fs = std::filesystem;
using nlohmann::json;
using sxseval::Error;
using sxseval::Project;
using sxseval::Setting;
using sxseval::Table;

namespace {

// Bad flag values found after CLI11 parsing; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string project;
  std::vector<std::string> settings;
  std::optional<bool> z;
  std::string z_grouping = "per-setting";
  std::vector<std::string> exclude;
  bool auto_exclude = false;
  std::string exclusion_mode = "drop-empty-segments";
  int64_t trials = 10000;
  uint64_t seed = 0;
  std::string out;
  std::string format = "tsv";
  size_t threads = 0;
  std::string reference_system;
  int buckets = 3;
  // Captured before the command runs, since assign and import rewrite the store.
  std::map<std::string, std::string> input_digests;
};

std::string Num(double x, int digits = 4) { return sxseval::FormatNumber(x, digits); }
std::string Num(const std::optional<double>& x, int digits = 4) {
  return x ? Num(*x, digits) : "NA";
}
std::string Str(std::string_view s) { return std::string(s); }

std::vector<Setting> Settings(const RunConfig& cfg, std::vector<Setting> allowed) {
  if (cfg.settings.empty()) return allowed;
  std::set<Setting> chosen;
  for (const std::string& s : cfg.settings) {
    const auto setting = sxseval::ParseSetting(s);
    if (!setting) throw UsageError("--setting: unknown setting '" + s + "'");
    chosen.insert(*setting);
  }
  std::vector<Setting> out;
  for (Setting s : allowed) {
    if (chosen.contains(s)) out.push_back(s);
  }
  return out;
}

sxseval::ZGrouping Grouping(const RunConfig& cfg) {
  if (cfg.z_grouping == "per-setting") return sxseval::ZGrouping::kPerSetting;
  if (cfg.z_grouping == "pooled") return sxseval::ZGrouping::kPooledMqmSettings;
  throw UsageError("--z-grouping: expected per-setting or pooled");
}

json ConfigJson(const std::string& command, const RunConfig& cfg, const json& extra) {
  json j = {{"command", command},
            {"project", fs::absolute(cfg.project).lexically_normal().string()},
            {"settings", cfg.settings},
            {"z", cfg.z ? json(*cfg.z) : json()},
            {"z_grouping", cfg.z_grouping},
            {"exclude", cfg.exclude},
            {"auto_exclude", cfg.auto_exclude},
            {"exclusion_mode", cfg.exclusion_mode},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"format", cfg.format},
            {"reference_system", cfg.reference_system},
            {"buckets", cfg.buckets}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

struct Loaded {
  Project project;
  std::set<std::string> excluded;
};

Loaded LoadForAnalysis(const RunConfig& cfg) {
  Loaded l{sxseval::LoadProject(cfg.project), {}};
  l.excluded.insert(cfg.exclude.begin(), cfg.exclude.end());
  if (cfg.auto_exclude) {
    for (Setting s : {Setting::kMqm, Setting::kSxsMqm}) {
      std::set<std::string> active;
      for (const auto& a : l.project.mqm) {
        if (a.setting == s) active.insert(a.annotator);
      }
      if (active.size() < 2) continue;
      for (const auto& st : sxseval::AnnotatorOutliers(l.project, s)) {
        if (st.flagged) l.excluded.insert(st.annotator);
      }
    }
  }
  if (!l.excluded.empty()) {
    sxseval::ExclusionMode mode;
    if (cfg.exclusion_mode == "drop-empty-segments") {
      mode = sxseval::ExclusionMode::kDropEmptySegments;
    } else if (cfg.exclusion_mode == "drop-their-segments") {
      mode = sxseval::ExclusionMode::kDropTheirSegments;
    } else {
      throw UsageError("--exclusion-mode: expected drop-empty-segments or drop-their-segments");
    }
    l.project = sxseval::ExcludeAnnotators(l.project, l.excluded, mode);
  }
  return l;
}

Table ExcludedTable(const std::set<std::string>& excluded) {
  Table t{"excluded_annotators", {"annotator"}, {}};
  for (const std::string& a : excluded) t.rows.push_back({a});
  return t;
}

void Emit(const std::string& command, const RunConfig& cfg, std::vector<Table> tables,
          const json& extra = json::object()) {
  const auto format = sxseval::ParseReportFormat(cfg.format);
  if (!format) throw UsageError("--format: expected tsv, json, or markdown");
  sxseval::Report report;
  report.header.command = command;
  report.header.config_hash = sxseval::ConfigHash(ConfigJson(command, cfg, extra));
  report.header.seed = cfg.seed;
  report.header.trials = cfg.trials;
  report.header.input_digests = cfg.input_digests;
  report.tables = std::move(tables);
  const std::string text = sxseval::Render(report, *format);
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(cfg.out);
  const fs::path file = fs::path(cfg.out) / (command + "." + Str(sxseval::Extension(*format)));
  sxseval::WriteFileAtomic(file, text);
  std::cerr << "wrote " << file.string() << "\n";
}

int RunValidate(const RunConfig& cfg) {
  const Project p = sxseval::LoadProject(cfg.project);
  Table t{"violations", {"code", "location"}, {}};
  for (const auto& v : sxseval::ValidateProject(p)) t.rows.push_back({v.code, v.location});
  const bool clean = t.rows.empty();
  Emit("validate", cfg, {std::move(t)});
  return clean ? 0 : 1;
}

int RunScore(const RunConfig& cfg) {
  const Loaded l = LoadForAnalysis(cfg);
  Table systems{"system_scores", {"setting", "system", "score", "n_segments"}, {}};
  Table segments{"segment_scores", {"setting", "system", "doc_id", "seg_id", "score"}, {}};
  for (Setting s : Settings(cfg, {std::begin(sxseval::kAllSettings), std::end(sxseval::kAllSettings)})) {
    sxseval::ScoreOptions opt;
    opt.use_z = cfg.z.value_or(false);
    opt.grouping = Grouping(cfg);
    sxseval::ScoreTable table;
    try {
      table = sxseval::BuildScoreTable(l.project, s, opt);
    } catch (const Error& e) {
      if (e.code() == "E_NO_ANNOTATIONS") continue;
      throw;
    }
    for (const auto& [system, score] : table.system_scores) {
      systems.rows.push_back({Str(Name(s)), system, Num(score),
                              std::to_string(table.SegmentsOf(system).size())});
    }
    for (const auto& [key, score] : table.segment_scores) {
      segments.rows.push_back(
          {Str(Name(s)), key.first, key.second.doc_id, key.second.seg_id, Num(score)});
    }
  }
  Emit("score", cfg, {std::move(systems), std::move(segments), ExcludedTable(l.excluded)});
  return 0;
}

int RunAgreement(const RunConfig& cfg) {
  const Loaded l = LoadForAnalysis(cfg);
  sxseval::AgreementReportOptions opt;
  opt.settings = Settings(cfg, {std::begin(sxseval::kAllSettings), std::end(sxseval::kAllSettings)});
  opt.buckets = cfg.buckets;
  opt.labels.use_z = cfg.z.value_or(false);
  opt.labels.grouping = Grouping(cfg);
  if (!cfg.reference_system.empty()) {
    opt.length_rule = sxseval::DefaultLengthRule(l.project, cfg.reference_system);
  }
  Table t{"agreement", {"setting", "scope", "alpha", "n_units", "n_labels", "tie_rate"}, {}};
  for (const auto& row : sxseval::AgreementReport(l.project, opt)) {
    t.rows.push_back({Str(Name(row.setting)), row.scope, Num(row.alpha),
                      std::to_string(row.n_units), std::to_string(row.n_labels),
                      Num(row.tie_rate)});
  }
  Emit("agreement", cfg, {std::move(t), ExcludedTable(l.excluded)});
  return 0;
}

int RunItc(const RunConfig& cfg, const sxseval::ItcOptions& options) {
  const Loaded l = LoadForAnalysis(cfg);
  Table t{"itc",
          {"scope", "setting", "criterion", "mean_percentage", "n_annotators", "n_pairs"},
          {}};
  for (sxseval::PairScope scope :
       {sxseval::PairScope::kDesignated, sxseval::PairScope::kNonDesignated}) {
    for (Setting s : Settings(cfg, {Setting::kMqm, Setting::kSxsMqm})) {
      for (const auto& row : sxseval::ItcReport(l.project, s, scope, options)) {
        t.rows.push_back({Str(Name(row.scope)), Str(Name(row.setting)), Str(Name(row.criterion)),
                          Num(row.mean_percentage, 2), std::to_string(row.n_annotators),
                          std::to_string(row.n_pairs)});
      }
    }
  }
  Emit("itc", cfg, {std::move(t), ExcludedTable(l.excluded)},
       {{"lenient_overlap", options.lenient_overlap},
        {"subcategory_match", options.subcategory_match}});
  return 0;
}

int RunPra(const RunConfig& cfg) {
  const Loaded l = LoadForAnalysis(cfg);
  sxseval::SegmentLabelOptions opt;
  opt.use_z = cfg.z.value_or(false);
  opt.grouping = Grouping(cfg);
  Table t{"pra",
          {"alpha", "beta", "pra", "concordant", "discordant", "tied_alpha_only",
           "tied_beta_only", "tied_both", "dropped_units"},
          {}};
  const auto chosen = Settings(cfg, {std::begin(sxseval::kAllSettings), std::end(sxseval::kAllSettings)});
  auto wanted = [&](Setting s) { return std::find(chosen.begin(), chosen.end(), s) != chosen.end(); };
  for (const auto& row : sxseval::PraReport(l.project, opt)) {
    if (!wanted(row.alpha) || !wanted(row.beta)) continue;
    const auto& c = row.result.counts;
    t.rows.push_back({Str(Name(row.alpha)), Str(Name(row.beta)), Num(row.result.value),
                      std::to_string(c.concordant), std::to_string(c.discordant),
                      std::to_string(c.tied_alpha_only), std::to_string(c.tied_beta_only),
                      std::to_string(c.tied_both), std::to_string(row.dropped_units)});
  }
  Emit("pra", cfg, {std::move(t), ExcludedTable(l.excluded)});
  return 0;
}

int RunRank(const RunConfig& cfg) {
  const Loaded l = LoadForAnalysis(cfg);
  sxseval::RankOptions opt;
  opt.use_z = cfg.z.value_or(true);
  opt.grouping = Grouping(cfg);
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  const auto chosen = Settings(cfg, {std::begin(sxseval::kAllSettings), std::end(sxseval::kAllSettings)});
  Table t{"rank",
          {"group", "setting", "better", "worse", "better_score", "worse_score", "p_value",
           "n_segments"},
          {}};
  for (const auto& row : sxseval::RankReport(l.project, opt)) {
    if (std::find(chosen.begin(), chosen.end(), row.setting) == chosen.end()) continue;
    const auto& r = row.result;
    t.rows.push_back({row.group, Str(Name(row.setting)), r.better, r.worse, Num(r.better_score),
                      Num(r.worse_score), Num(r.p_value), std::to_string(r.n_segments)});
  }
  Emit("rank", cfg, {std::move(t), ExcludedTable(l.excluded)});
  return 0;
}

int RunDistribution(const RunConfig& cfg, const sxseval::DistributionOptions& options) {
  const Loaded l = LoadForAnalysis(cfg);
  Table t{"error_distribution", {"setting", "category", "severity", "count", "fraction"}, {}};
  for (Setting s : Settings(cfg, {Setting::kMqm, Setting::kSxsMqm})) {
    const auto d = sxseval::ComputeErrorDistribution(l.project, s, options);
    for (const auto& [key, n] : d.counts) {
      const auto pct = d.percentages.find(key);
      t.rows.push_back({Str(Name(s)), sxseval::Path(key.first), Str(Name(key.second)),
                        std::to_string(n),
                        pct == d.percentages.end() ? "NA" : Num(pct->second)});
    }
  }
  Emit("distribution", cfg, {std::move(t), ExcludedTable(l.excluded)},
       {{"duplicate_rule", options.duplicate_rule}, {"subcategories", options.subcategories}});
  return 0;
}

int RunConversion(const RunConfig& cfg, const sxseval::MatchOptions& options) {
  const Loaded l = LoadForAnalysis(cfg);
  const auto m = sxseval::BuildConversionMatrix(l.project, options);
  Table t{"conversion", {"mqm_category", "sxs_mqm_category", "count", "fraction"}, {}};
  for (const auto& [key, n] : m.cells) {
    t.rows.push_back({Str(Name(key.first)), Str(Name(key.second)), std::to_string(n),
                      Num(static_cast<double>(n) / static_cast<double>(m.total))});
  }
  Emit("conversion", cfg, {std::move(t), ExcludedTable(l.excluded)}, {{"exact", options.exact}});
  return 0;
}

int RunOutliers(const RunConfig& cfg, double threshold) {
  const Project p = sxseval::LoadProject(cfg.project);
  Table t{"outliers", {"setting", "annotator", "error_count", "z", "flagged"}, {}};
  for (Setting s : Settings(cfg, {Setting::kMqm, Setting::kSxsMqm})) {
    bool any = false;
    for (const auto& a : p.mqm) any = any || a.setting == s;
    if (!any) continue;
    for (const auto& st : sxseval::AnnotatorOutliers(p, s, threshold)) {
      t.rows.push_back({Str(Name(s)), st.annotator, std::to_string(st.error_count), Num(st.z, 2),
                        st.flagged ? "yes" : "no"});
    }
  }
  Emit("outliers", cfg, {std::move(t)}, {{"threshold", threshold}});
  return 0;
}

int RunSelectPairs(const RunConfig& cfg, const std::string& metric_file, bool lower_is_better,
                   double threshold) {
  const Project p = sxseval::LoadProject(cfg.project);
  const auto scores = sxseval::ParseMetricScoresTsv(sxseval::ReadFile(metric_file));
  sxseval::SelectionOptions opt;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  opt.threshold = threshold;
  opt.higher_is_better = !lower_is_better;
  const auto sel = sxseval::SelectPairs(scores, p.units, opt);
  Table ranking{"ranking", {"rank", "system", "metric_score"}, {}};
  for (size_t i = 0; i < sel.ranking.size(); ++i) {
    ranking.rows.push_back({std::to_string(i + 1), sel.ranking[i].first,
                            Num(sel.ranking[i].second)});
  }
  Table pairs{"designated_pairs", {"group", "system_a", "system_b"}, {}};
  for (const auto& pair : sel.Pairs()) pairs.rows.push_back({pair.group, pair.first, pair.second});
  Table diag{"pair_diagnostics",
             {"system_a", "system_b", "rank_a", "rank_b", "p_value", "cross_bleu",
              "bleu_a_as_hyp", "bleu_b_as_hyp", "n_segments"},
             {}};
  for (const auto& d : sel.diagnostics) {
    diag.rows.push_back({d.a, d.b, std::to_string(d.rank_a), std::to_string(d.rank_b),
                         Num(d.p_value), Num(d.cross_bleu.score, 2), Num(d.cross_bleu.a_as_hyp, 2),
                         Num(d.cross_bleu.b_as_hyp, 2), std::to_string(d.n_segments)});
  }
  Emit("select-pairs", cfg, {std::move(ranking), std::move(pairs), std::move(diag)},
       {{"metric_scores", sxseval::Sha256Hex(sxseval::ReadFile(metric_file))},
        {"lower_is_better", lower_is_better},
        {"threshold", threshold}});
  return 0;
}

int RunAssign(const RunConfig& cfg, const std::vector<std::string>& pool, int k,
              const std::string& order) {
  Project p = sxseval::LoadProject(cfg.project);
  sxseval::AssignOptions opt;
  opt.k = k;
  opt.seed = cfg.seed;
  if (order == "interleaved") {
    opt.order = sxseval::SettingOrder::kInterleaved;
  } else if (order != "sequential") {
    throw UsageError("--order: expected sequential or interleaved");
  }
  const auto assignment = sxseval::AssignTasks(p, pool, opt);
  const auto violations = sxseval::ValidateAssignment(p, assignment);
  if (!violations.empty()) {
    throw Error(violations.front().code, "assignment failed validation",
                violations.front().location);
  }
  p.annotators.insert(assignment.pool.begin(), assignment.pool.end());
  sxseval::SaveProject(p, cfg.project);
  sxseval::WriteFileAtomic(sxseval::AssignmentPath(cfg.project),
                           sxseval::AssignmentToJson(assignment).dump(2) + "\n");
  Table t{"assignment", {"annotator", "documents", "tasks"}, {}};
  for (const std::string& a : assignment.pool) {
    int64_t docs = 0;
    int64_t tasks = 0;
    for (const auto& [doc, who] : assignment.doc_annotators) {
      docs += std::count(who.begin(), who.end(), a);
    }
    for (const auto& task : assignment.tasks) tasks += task.annotator == a;
    t.rows.push_back({a, std::to_string(docs), std::to_string(tasks)});
  }
  Emit("assign", cfg, {std::move(t)}, {{"pool", pool}, {"k", k}, {"order", order}});
  return 0;
}

int RunServe(const RunConfig& cfg, const std::string& host, int port,
             const std::string& static_dir) {
  sxseval::Campaign campaign(cfg.project);
  sxseval::Server server(campaign, {host, static_dir});
  std::cerr << "serving " << cfg.project << " on http://" << host << ":" << port << "\n";
  if (!server.Listen(port)) {
    throw Error("E_BIND", "cannot listen", host + ":" + std::to_string(port));
  }
  return 0;
}

int RunExport(const RunConfig& cfg) {
  sxseval::Campaign campaign(cfg.project);
  Table t{"exported_files", {"file"}, {}};
  for (const std::string& f : campaign.Export()) t.rows.push_back({f});
  Emit("export", cfg, {std::move(t)});
  return 0;
}

int RunImport(const RunConfig& cfg, const std::string& language_pair,
              const std::vector<std::string>& pairs, const std::string& units,
              const std::string& mqm, const std::string& sxs_mqm, const std::string& rr) {
  Project p;
  p.language_pair = language_pair;
  auto add_units = [&](const std::vector<sxseval::TranslationUnit>& list) {
    p.units.insert(p.units.end(), list.begin(), list.end());
  };
  if (!units.empty()) add_units(sxseval::ParseUnitsTsv(sxseval::ReadFile(units)));
  for (auto [file, setting] : {std::pair{mqm, Setting::kMqm}, {sxs_mqm, Setting::kSxsMqm}}) {
    if (file.empty()) continue;
    auto data = sxseval::ParseMqmTsv(sxseval::ReadFile(file), setting);
    add_units(data.units);
    p.mqm.insert(p.mqm.end(), data.annotations.begin(), data.annotations.end());
  }
  if (!rr.empty()) p.rr = sxseval::ParseRrTsv(sxseval::ReadFile(rr));
  for (const std::string& arg : pairs) {
    // "a:b" or "a:b:group"
    const size_t c1 = arg.find(':');
    const size_t c2 = c1 == std::string::npos ? c1 : arg.find(':', c1 + 1);
    if (c1 == std::string::npos) throw UsageError("--pair: expected A:B[:GROUP]");
    p.designated_pairs.push_back({arg.substr(0, c1),
                                  arg.substr(c1 + 1, c2 == std::string::npos ? c2 : c2 - c1 - 1),
                                  c2 == std::string::npos ? "" : arg.substr(c2 + 1)});
  }
  // Deduplicate units; later files repeat texts already seen.
  std::map<std::pair<std::string, sxseval::SegmentRef>, sxseval::TranslationUnit> unique;
  std::vector<sxseval::SegmentRef> order;
  for (const auto& u : p.units) {
    auto [it, inserted] = unique.emplace(std::pair{u.system, u.segment}, u);
    if (!inserted && it->second != u) {
      throw Error("E_UNIT_CONFLICT", "inputs disagree on a unit text",
                  u.system + "/" + u.segment.doc_id + "/" + u.segment.seg_id);
    }
    if (inserted) order.push_back(u.segment);
  }
  p.units.clear();
  for (auto& [key, u] : unique) p.units.push_back(u);
  std::map<std::string, size_t> doc_pos;
  std::set<sxseval::SegmentRef> seen;
  for (const auto& s : order) {
    if (!seen.insert(s).second) continue;
    auto [it, inserted] = doc_pos.emplace(s.doc_id, p.documents.size());
    if (inserted) p.documents.push_back({s.doc_id, {}});
    p.documents[it->second].seg_ids.push_back(s.seg_id);
  }
  for (const auto& u : p.units) p.systems.insert(u.system);
  for (const auto& a : p.mqm) p.annotators.insert(a.annotator);
  for (const auto& j : p.rr) p.annotators.insert(j.annotator);
  sxseval::Canonicalize(p);
  const auto violations = sxseval::ValidateProject(p);
  sxseval::SaveProject(p, cfg.project);
  Table t{"violations", {"code", "location"}, {}};
  for (const auto& v : violations) t.rows.push_back({v.code, v.location});
  Emit("import", cfg, {std::move(t)});
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Human-evaluation workbench for MQM, side-by-side MQM, and relative ranking"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&cfg](CLI::App* sub, bool analysis) {
    sub->add_option("--project", cfg.project, "Project store directory")->required();
    sub->add_option("--out", cfg.out, "Report directory (stdout when omitted)");
    sub->add_option("--format", cfg.format, "tsv, json, or markdown");
    sub->add_option("--seed", cfg.seed, "Random seed");
    if (!analysis) return;
    sub->add_option("--setting", cfg.settings, "MQM, SXS_MQM, SXS_RR (repeatable)");
    sub->add_flag("--z,!--no-z", cfg.z,
                  "z-normalize scores per annotator (default: on for rank, off elsewhere)");
    sub->add_option("--z-grouping", cfg.z_grouping, "per-setting or pooled");
    sub->add_option("--exclude-annotators", cfg.exclude, "Annotator ids to drop")
        ->delimiter(',');
    sub->add_flag("--auto-exclude-outliers", cfg.auto_exclude,
                  "Drop annotators with error-count z > 2");
    sub->add_option("--exclusion-mode", cfg.exclusion_mode,
                    "drop-empty-segments or drop-their-segments");
    sub->add_option("--trials", cfg.trials, "Permutation trials");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  };

  auto* validate = app.add_subcommand("validate", "Check store invariants");
  common(validate, false);
  auto* score = app.add_subcommand("score", "Segment and system scores");
  common(score, true);
  auto* agreement = app.add_subcommand("agreement", "Krippendorff's alpha and tie rates");
  common(agreement, true);
  agreement->add_option("--buckets", cfg.buckets, "Length buckets (0 disables)");
  agreement->add_option("--reference-system", cfg.reference_system,
                        "System whose target length buckets segments");
  sxseval::ItcOptions itc_options;
  auto* itc = app.add_subcommand("itc", "Inter-translation consistency");
  common(itc, true);
  itc->add_flag("--lenient-overlap", itc_options.lenient_overlap, "Any overlap counts");
  itc->add_flag("--subcategory-match", itc_options.subcategory_match,
                "Category match includes subcategory");
  auto* pra = app.add_subcommand("pra", "Pairwise ranking agreement between settings");
  common(pra, true);
  auto* rank = app.add_subcommand("rank", "Significance of designated pair rankings");
  common(rank, true);
  sxseval::DistributionOptions dist_options;
  auto* distribution = app.add_subcommand("distribution", "Error category distribution");
  common(distribution, true);
  distribution->add_flag("--duplicate-rule", dist_options.duplicate_rule,
                         "Count MQM errors once per pair a system is in");
  distribution->add_flag("--subcategories", dist_options.subcategories, "Split subcategories");
  sxseval::MatchOptions match_options;
  auto* conversion = app.add_subcommand("conversion", "MQM to SXS_MQM category transitions");
  common(conversion, true);
  conversion->add_flag("--exact", match_options.exact, "Match identical offsets only");
  double outlier_threshold = 2.0;
  auto* outliers = app.add_subcommand("outliers", "Annotator error-count outliers");
  common(outliers, false);
  outliers->add_option("--setting", cfg.settings, "MQM or SXS_MQM (repeatable)");
  outliers->add_option("--threshold", outlier_threshold, "z threshold");
  std::string metric_file;
  bool lower_is_better = false;
  double similar_threshold = 0.05;
  auto* select = app.add_subcommand("select-pairs", "Choose system pairs for annotation");
  common(select, false);
  select->add_option("--metric-scores", metric_file, "system, doc_id, seg_id, score TSV")
      ->required();
  select->add_option("--trials", cfg.trials, "Permutation trials");
  select->add_option("--threshold", similar_threshold, "Similar quality iff p above this");
  select->add_flag("--lower-is-better", lower_is_better, "Metric direction");
  std::vector<std::string> pool;
  int k = 3;
  std::string order = "sequential";
  auto* assign = app.add_subcommand("assign", "Assign documents and tasks to annotators");
  common(assign, false);
  assign->add_option("--pool", pool, "Annotator ids")->delimiter(',')->required();
  assign->add_option("--k", k, "Annotators per document");
  assign->add_option("--order", order, "sequential or interleaved");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the annotation API");
  serve->add_option("--project", cfg.project, "Project store directory")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--static", static_dir, "Directory served at /");
  auto* exporter = app.add_subcommand("export", "Fold the campaign journal into the store");
  common(exporter, false);
  std::string language_pair;
  std::vector<std::string> pairs;
  std::string units_file, mqm_file, sxs_file, rr_file;
  auto* import = app.add_subcommand("import", "Build a store from TSV files");
  common(import, false);
  import->add_option("--language-pair", language_pair, "e.g. en-de")->required();
  import->add_option("--pair", pairs, "Designated pair A:B[:GROUP] (repeatable)");
  import->add_option("--units", units_file, "Units TSV");
  import->add_option("--mqm", mqm_file, "MQM TSV");
  import->add_option("--sxs-mqm", sxs_file, "Side-by-side MQM TSV");
  import->add_option("--rr", rr_file, "Relative-ranking TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sxseval::DefaultThreads() = cfg.threads;
    if (*import) {
      for (const std::string& f : {units_file, mqm_file, sxs_file, rr_file}) {
        if (!f.empty()) cfg.input_digests[fs::path(f).filename().string()] =
            sxseval::Sha256Hex(sxseval::ReadFile(f));
      }
    } else if (fs::exists(cfg.project)) {
      cfg.input_digests = sxseval::InputDigests(cfg.project);
    }
    if (*validate) return RunValidate(cfg);
    if (*score) return RunScore(cfg);
    if (*agreement) return RunAgreement(cfg);
    if (*itc) return RunItc(cfg, itc_options);
    if (*pra) return RunPra(cfg);
    if (*rank) return RunRank(cfg);
    if (*distribution) return RunDistribution(cfg, dist_options);
    if (*conversion) return RunConversion(cfg, match_options);
    if (*outliers) return RunOutliers(cfg, outlier_threshold);
    if (*select) return RunSelectPairs(cfg, metric_file, lower_is_better, similar_threshold);
    if (*assign) return RunAssign(cfg, pool, k, order);
    if (*serve) return RunServe(cfg, host, port, static_dir);
    if (*exporter) return RunExport(cfg);
    if (*import) {
      return RunImport(cfg, language_pair, pairs, units_file, mqm_file, sxs_file, rr_file);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.message();
    if (!e.detail().empty()) std::cerr << " (" << e.detail() << ")";
    std::cerr << "\n";
    return 1;
  }
  return 2;
}
