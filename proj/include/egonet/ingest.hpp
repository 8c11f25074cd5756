#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/network.hpp"

namespace egonet {

inline constexpr std::string_view kRespondentsHeader = "respondent_id,display_name,gender,projects,role_tags";
inline constexpr std::string_view kTiesHeader = "respondent_id,target_name,labels,from_project,pre_existing";
inline constexpr std::string_view kAliasesHeader = "raw_name,canonical_id,note";

struct RespondentRecord {
  std::string respondent_id;
  std::string display_name;
  std::string gender;
  std::set<std::string> projects;
  std::set<std::string> role_tags;
  std::size_t line = 0;
};

struct TieRecord {
  std::string respondent_id;
  std::string target_name;  // raw, as written
  TieLabelSet labels;
  std::size_t line = 0;
};

struct AliasEntry {
  std::string raw_name;
  std::string canonical_id;
  std::string note;
  std::size_t line = 0;
};

struct ParsedInputs {
  std::vector<RespondentRecord> respondents;
  std::vector<TieRecord> ties;
  std::vector<AliasEntry> aliases;
  std::size_t tie_rows = 0;  // data rows in the ties file
  std::vector<Diagnostic> diagnostics;
};

/// Trim, collapse internal whitespace runs to one space, ASCII case-fold.
inline std::string normalize_name(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

namespace detail {

inline std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline std::vector<CsvRow> read_table(std::string_view text, const std::string& file,
                                      std::string_view header, std::vector<Diagnostic>& diags) {
  auto rows = parse_csv(text, file, diags);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "'" + file + "' is empty");
  std::vector<std::string> trimmed;
  for (auto& f : rows.front().fields) trimmed.push_back(trim(f));
  if (join_list(trimmed, ",") != header) {
    throw Error(ErrorCode::SchemaMismatch, "'" + file + "' header must be '" + std::string(header) +
                                               "', found '" + join_list(trimmed, ",") + "'");
  }
  rows.erase(rows.begin());
  return rows;
}

inline bool check_width(const CsvRow& row, std::size_t width, const std::string& file,
                        std::vector<Diagnostic>& diags) {
  if (row.fields.size() == width) return true;
  diags.push_back({file, row.line, 0,
                   "expected " + std::to_string(width) + " fields, found " +
                       std::to_string(row.fields.size())});
  return false;
}

inline std::optional<bool> parse_flag(std::string_view s) {
  const auto t = trim(s);
  if (t.empty() || t == "0") return false;
  if (t == "1") return true;
  return std::nullopt;
}

}  // namespace detail

inline std::vector<RespondentRecord> parse_respondents(std::string_view text, const std::string& file,
                                                       std::vector<Diagnostic>& diags) {
  std::vector<RespondentRecord> out;
  std::set<std::string> seen;
  for (const auto& row : detail::read_table(text, file, kRespondentsHeader, diags)) {
    if (!detail::check_width(row, 5, file, diags)) continue;
    RespondentRecord r;
    r.respondent_id = detail::trim(row.fields[0]);
    r.display_name = detail::trim(row.fields[1]);
    r.gender = detail::trim(row.fields[2]);
    for (auto& p : split_list(row.fields[3])) r.projects.insert(p);
    for (auto& t : split_list(row.fields[4])) r.role_tags.insert(t);
    r.line = row.line;
    if (r.respondent_id.empty()) {
      diags.push_back({file, row.line, 1, "empty respondent_id"});
    } else if (r.display_name.empty()) {
      diags.push_back({file, row.line, 2, "empty display_name"});
    } else if (!seen.insert(r.respondent_id).second) {
      diags.push_back({file, row.line, 1, "duplicate respondent_id '" + r.respondent_id + "'"});
    } else {
      out.push_back(std::move(r));
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "'" + file + "' has no valid respondents");
  return out;
}

inline std::vector<TieRecord> parse_ties(std::string_view text, const std::string& file,
                                         std::vector<Diagnostic>& diags, std::size_t* row_count = nullptr) {
  std::vector<TieRecord> out;
  const auto rows = detail::read_table(text, file, kTiesHeader, diags);
  if (row_count) *row_count = rows.size();
  for (const auto& row : rows) {
    if (!detail::check_width(row, 5, file, diags)) continue;
    TieRecord t;
    t.respondent_id = detail::trim(row.fields[0]);
    t.target_name = row.fields[1];
    t.line = row.line;
    if (t.respondent_id.empty()) {
      diags.push_back({file, row.line, 1, "empty respondent_id"});
      continue;
    }
    if (detail::trim(t.target_name).empty()) {
      diags.push_back({file, row.line, 2, "empty target_name"});
      continue;
    }
    bool ok = true;
    for (const auto& label : split_list(row.fields[2])) {
      if (label == "family") t.labels.family = true;
      else if (label == "friend") t.labels.friend_ = true;
      else if (label == "coworker") t.labels.coworker = true;
      else if (label == "other") t.labels.other = true;
      else {
        diags.push_back({file, row.line, 3, "unknown label '" + label + "'"});
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const auto fp = detail::parse_flag(row.fields[3]);
    const auto pe = detail::parse_flag(row.fields[4]);
    if (!fp || !pe) {
      diags.push_back({file, row.line, fp ? 5u : 4u, "boolean must be 0 or 1"});
      continue;
    }
    t.labels.from_project = *fp;
    t.labels.pre_existing = *pe;
    if (t.labels.empty()) {
      diags.push_back({file, row.line, 3, "tie has no label and no provenance flag"});
      continue;
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<AliasEntry> parse_aliases(std::string_view text, const std::string& file,
                                             std::vector<Diagnostic>& diags) {
  std::vector<AliasEntry> out;
  std::map<std::string, std::string> seen;
  for (const auto& row : detail::read_table(text, file, kAliasesHeader, diags)) {
    if (!detail::check_width(row, 3, file, diags)) continue;
    AliasEntry a{row.fields[0], detail::trim(row.fields[1]), detail::trim(row.fields[2]), row.line};
    const auto key = normalize_name(a.raw_name);
    if (key.empty()) {
      diags.push_back({file, row.line, 1, "empty raw_name"});
    } else if (a.canonical_id.empty()) {
      diags.push_back({file, row.line, 2, "empty canonical_id"});
    } else if (auto it = seen.find(key); it != seen.end() && it->second != a.canonical_id) {
      diags.push_back({file, row.line, 1, "'" + key + "' already aliased to '" + it->second + "'"});
    } else {
      seen.emplace(key, a.canonical_id);
      out.push_back(std::move(a));
    }
  }
  return out;
}

struct InputPaths {
  std::filesystem::path respondents;
  std::filesystem::path ties;
  std::optional<std::filesystem::path> aliases;
};

inline ParsedInputs parse_inputs(const InputPaths& paths) {
  ParsedInputs in;
  const auto resp = read_file(paths.respondents);
  const auto ties = read_file(paths.ties);
  std::optional<std::string> aliases;
  if (paths.aliases) aliases = read_file(*paths.aliases);
  in.respondents = parse_respondents(resp, paths.respondents.filename().string(), in.diagnostics);
  in.ties = parse_ties(ties, paths.ties.filename().string(), in.diagnostics, &in.tie_rows);
  if (aliases) in.aliases = parse_aliases(*aliases, paths.aliases->filename().string(), in.diagnostics);
  return in;
}

/// Per relation type counts, the analogue of a questionnaire cleaning table.
struct RelationStats {
  std::string relation;
  std::size_t ties = 0;
  std::size_t respondents_with_tie = 0;
  std::size_t respondents_with_modified_tie = 0;  // alias-driven changes only
  std::size_t alias_modified_ties = 0;
  std::size_t normalization_modified_ties = 0;

  bool operator==(const RelationStats&) const = default;
};

struct ConflictRow {
  std::size_t line = 0;
  std::string respondent_id;
  std::string target;

  bool operator==(const ConflictRow&) const = default;
};

struct CleaningReport {
  std::vector<RelationStats> relations;  // label order
  std::vector<std::string> unresolved_names;  // alter ids created, sorted
  std::vector<ConflictRow> conflicts;
  std::size_t tie_rows = 0;
  std::size_t tie_contributions = 0;
  std::size_t tie_diagnostics = 0;

  bool operator==(const CleaningReport&) const = default;
};

struct CanonicalInputs {
  std::vector<Respondent> respondents;
  std::vector<Tie> ties;
  CleaningReport report;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves raw target names to canonical person ids.
///
/// Resolution order for a raw name: exact respondent id; alias entry (keyed
/// by normalised raw name); respondent whose normalised display name or id
/// matches; otherwise an alter whose id is the normalised name. Alias
/// targets are resolved the same way without a second alias lookup.
class NameResolver {
 public:
  NameResolver(const std::vector<RespondentRecord>& respondents, const std::vector<AliasEntry>& aliases) {
    for (const auto& r : respondents) {
      ids_.insert(r.respondent_id);
      by_normalized_id_[normalize_name(r.respondent_id)].insert(r.respondent_id);
      by_name_[normalize_name(r.display_name)].insert(r.respondent_id);
    }
    for (const auto& a : aliases) alias_[normalize_name(a.raw_name)] = a.canonical_id;
    for (const auto& [key, canonical] : alias_) {
      const auto target = normalize_name(canonical);
      if (target != key && alias_.count(target) && !ids_.count(canonical)) {
        throw Error(ErrorCode::AliasCycle,
                    "alias target '" + canonical + "' of '" + key + "' is itself aliased");
      }
    }
  }

  struct Resolution {
    std::string id;
    bool respondent = false;
    bool aliased = false;     // an alias entry changed the name
    bool normalized = false;  // normalisation alone changed the name
    std::string error;        // nonempty when the name is ambiguous
  };

  Resolution resolve(const std::string& raw) const {
    Resolution r;
    if (ids_.count(raw)) {
      r.id = raw;
      r.respondent = true;
      return r;
    }
    const auto key = normalize_name(raw);
    if (auto it = alias_.find(key); it != alias_.end()) {
      r = resolve_plain(it->second, it->second);
      r.aliased = normalize_name(it->second) != key;
      r.normalized = false;
      return r;
    }
    r = resolve_plain(raw, key);
    r.normalized = !r.respondent && key != raw;
    return r;
  }

 private:
  Resolution resolve_plain(const std::string& raw, const std::string& given_key) const {
    Resolution r;
    if (ids_.count(raw)) {
      r.id = raw;
      r.respondent = true;
      return r;
    }
    const auto key = normalize_name(given_key);
    for (const auto* table : {&by_name_, &by_normalized_id_}) {
      if (auto it = table->find(key); it != table->end()) {
        if (it->second.size() > 1) {
          r.error = "name '" + key + "' matches several respondents; add an alias entry";
          return r;
        }
        r.id = *it->second.begin();
        r.respondent = true;
        return r;
      }
    }
    r.id = key;
    return r;
  }

  std::set<std::string> ids_;
  std::map<std::string, std::set<std::string>> by_name_;
  std::map<std::string, std::set<std::string>> by_normalized_id_;
  std::map<std::string, std::string> alias_;
};

inline CanonicalInputs normalize_and_alias(const ParsedInputs& in, const std::string& ties_file = "ties.csv") {
  CanonicalInputs out;
  const NameResolver resolver(in.respondents, in.aliases);
  std::set<std::string> respondent_ids;
  for (const auto& r : in.respondents) {
    PersonAttributes a{r.gender, r.projects, r.role_tags, true};
    out.respondents.push_back({PersonId(r.respondent_id), std::move(a)});
    respondent_ids.insert(r.respondent_id);
  }

  constexpr std::size_t kRelations = std::size(kLabelNames);
  std::vector<std::set<std::string>> with_tie(kRelations), with_modified(kRelations);
  out.report.relations.resize(kRelations);
  for (std::size_t i = 0; i < kRelations; ++i) out.report.relations[i].relation = kLabelNames[i];
  std::set<std::string> unresolved;

  for (const auto& t : in.ties) {
    if (!respondent_ids.count(t.respondent_id)) {
      out.diagnostics.push_back({ties_file, t.line, 1, "respondent_id '" + t.respondent_id +
                                                           "' is not a respondent"});
      continue;
    }
    const auto res = resolver.resolve(t.target_name);
    if (!res.error.empty()) {
      out.diagnostics.push_back({ties_file, t.line, 2, res.error});
      continue;
    }
    if (res.id == t.respondent_id) {
      out.diagnostics.push_back({ties_file, t.line, 2, "tie resolves to the respondent itself"});
      continue;
    }
    if (t.labels.conflicting()) out.report.conflicts.push_back({t.line, t.respondent_id, res.id});
    if (!res.respondent) unresolved.insert(res.id);
    for (std::size_t i = 0; i < kRelations; ++i) {
      if (!label_flag(t.labels, i)) continue;
      auto& s = out.report.relations[i];
      ++s.ties;
      with_tie[i].insert(t.respondent_id);
      if (res.aliased) {
        ++s.alias_modified_ties;
        with_modified[i].insert(t.respondent_id);
      }
      if (res.normalized) ++s.normalization_modified_ties;
    }
    out.ties.push_back({PersonId(t.respondent_id), PersonId(res.id), t.labels, t.line});
  }
  for (std::size_t i = 0; i < kRelations; ++i) {
    out.report.relations[i].respondents_with_tie = with_tie[i].size();
    out.report.relations[i].respondents_with_modified_tie = with_modified[i].size();
  }
  out.report.unresolved_names.assign(unresolved.begin(), unresolved.end());
  out.report.tie_rows = in.tie_rows;
  out.report.tie_contributions = out.ties.size();
  out.report.tie_diagnostics = in.tie_rows - in.ties.size() + out.diagnostics.size();
  return out;
}

struct IngestConfig {
  ConflictPolicy conflict = ConflictPolicy::Reject;
  PrunePolicy prune = PrunePolicy::none();
};

struct IngestResult {
  CommunityNetwork network;
  CleaningReport cleaning;
  PruneReport prune;
  std::vector<Diagnostic> diagnostics;
};

/// parse -> normalise/alias -> build -> optional prune.
inline IngestResult ingest(const ParsedInputs& parsed, const IngestConfig& config,
                           const std::string& ties_file = "ties.csv") {
  auto canon = normalize_and_alias(parsed, ties_file);
  if (config.conflict == ConflictPolicy::Reject && !canon.report.conflicts.empty()) {
    const auto& c = canon.report.conflicts.front();
    throw Error(ErrorCode::LabelConflict, ties_file + " row " + std::to_string(c.line) + ": tie " +
                                              c.respondent_id + " -> " + c.target +
                                              " is both from_project and pre_existing");
  }
  IngestResult r;
  r.network = build_network(canon.respondents, canon.ties, config.conflict);
  r.cleaning = std::move(canon.report);
  r.diagnostics = parsed.diagnostics;
  r.diagnostics.insert(r.diagnostics.end(), canon.diagnostics.begin(), canon.diagnostics.end());
  if (config.prune.kind != PrunePolicy::Kind::None) {
    auto [net, report] = prune_components(r.network, config.prune);
    r.network = std::move(net);
    r.prune = std::move(report);
  }
  return r;
}

inline IngestResult ingest_pipeline(const InputPaths& paths, const IngestConfig& config) {
  return ingest(parse_inputs(paths), config, paths.ties.filename().string());
}

inline std::string render_cleaning_csv(const CleaningReport& r) {
  std::string out = "relation,ties,respondents_with_tie,respondents_with_modified_tie,"
                    "percent_respondents_modified,alias_modified_ties,normalization_modified_ties\n";
  for (const auto& s : r.relations) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f",
                  s.respondents_with_tie ? 100.0 * static_cast<double>(s.respondents_with_modified_tie) /
                                               static_cast<double>(s.respondents_with_tie)
                                         : 0.0);
    out += csv_line({s.relation, std::to_string(s.ties), std::to_string(s.respondents_with_tie),
                     std::to_string(s.respondents_with_modified_tie), pct,
                     std::to_string(s.alias_modified_ties), std::to_string(s.normalization_modified_ties)});
  }
  return out;
}

inline std::string render_cleaning_table(const CleaningReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %8s %12s %12s %8s %8s\n", "relation", "ties", "respondents",
                "modified", "alias", "normal.");
  out += buf;
  for (const auto& s : r.relations) {
    const double pct = s.respondents_with_tie ? 100.0 * static_cast<double>(s.respondents_with_modified_tie) /
                                                    static_cast<double>(s.respondents_with_tie)
                                              : 0.0;
    std::snprintf(buf, sizeof buf, "%-14s %8zu %12zu %11.1f%% %8zu %8zu\n", s.relation.c_str(), s.ties,
                  s.respondents_with_tie, pct, s.alias_modified_ties, s.normalization_modified_ties);
    out += buf;
  }
  out += "tie rows: " + std::to_string(r.tie_rows) + ", contributions: " +
         std::to_string(r.tie_contributions) + ", diagnostics: " + std::to_string(r.tie_diagnostics) + "\n";
  out += "unresolved names (alters): " + std::to_string(r.unresolved_names.size()) + "\n";
  out += "label conflicts: " + std::to_string(r.conflicts.size()) + "\n";
  for (const auto& c : r.conflicts) {
    out += "  row " + std::to_string(c.line) + ": " + c.respondent_id + " -> " + c.target + "\n";
  }
  return out;
}

}  // namespace egonet
