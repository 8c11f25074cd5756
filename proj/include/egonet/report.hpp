#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "egonet/csv.hpp"
#include "egonet/ego_metrics.hpp"
#include "egonet/elda.hpp"
#include "egonet/error.hpp"
#include "egonet/whole_metrics.hpp"

namespace egonet {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Markdown, Csv, Json };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "md" || s == "markdown") return ReportFormat::Markdown;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error(ErrorCode::UnsupportedFormat, "unsupported report format '" + std::string(s) + "'");
}

/// Key/value provenance embedded in every rendered document.
using Provenance = std::map<std::string, std::string>;

/// Four significant digits; negative zero prints as 0.
inline std::string format_sig4(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string format_fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

struct ComparisonCell {
  std::optional<double> value;
  std::string note;  // e.g. "(20 iterations)"; always derived from the report
  std::string flag;  // reason when value is missing or degenerate
};

struct ComparisonRow {
  std::string measure;
  ComparisonCell observed;
  ComparisonCell counterfactual;
  std::optional<double> delta;  // counterfactual - observed
};

struct ComparisonTable {
  std::string observed_name;
  std::string counterfactual_name;
  std::vector<ComparisonRow> rows;
  std::map<std::string, std::string> conventions;
};

namespace detail {

inline std::vector<std::pair<std::string, ComparisonCell>> report_cells(const MetricsReport& r) {
  auto flag = [&](const std::string& k) {
    auto it = r.flags.find(k);
    return it == r.flags.end() ? std::string() : it->second;
  };
  std::vector<std::pair<std::string, ComparisonCell>> cells;
  {
    ComparisonCell c{std::nullopt, "", flag("core_periphery")};
    if (r.core_periphery) {
      c.value = r.core_periphery->fit;
      c.note = "(" + std::to_string(r.core_periphery->iterations) + " iterations)";
    }
    cells.emplace_back("Core/periphery", c);
  }
  cells.emplace_back("Density", ComparisonCell{r.density, "", flag("density")});
  cells.emplace_back("Fragmentation", ComparisonCell{r.fragmentation, "", flag("fragmentation")});
  cells.emplace_back("Betweenness centralisation",
                     ComparisonCell{r.betweenness_centralisation, "", flag("betweenness_centralisation")});
  cells.emplace_back("Transitivity", ComparisonCell{r.transitivity, "", flag("transitivity")});
  {
    ComparisonCell c{r.degree_centralisation_all, "", flag("degree_centralisation")};
    if (r.degree_centralisation_out && r.degree_centralisation_in) {
      c.note = "(out " + format_sig4(*r.degree_centralisation_out) + ", in " +
               format_sig4(*r.degree_centralisation_in) + ")";
    }
    cells.emplace_back("Degree centralisation", c);
  }
  {
    ComparisonCell c{std::nullopt, "", flag("modularity")};
    if (r.modularity) {
      c.value = r.modularity->score;
      c.note = "(" + std::to_string(r.modularity->community_count) + " communities)";
    }
    cells.emplace_back("Modularity score", c);
  }
  cells.emplace_back("Average distance", ComparisonCell{r.average_distance, "", flag("average_distance")});
  for (const auto& [key, value] : r.assortativity) {
    cells.emplace_back("Assortativity by " + key, ComparisonCell{value, "", flag("assortativity:" + key)});
  }
  cells.emplace_back("Average degree", ComparisonCell{r.average_degree, "", flag("average_degree")});
  return cells;
}

inline std::string cell_text(const ComparisonCell& c) {
  if (!c.value) return "n/a";
  std::string s = format_sig4(*c.value);
  if (!c.note.empty()) s += " " + c.note;
  if (!c.flag.empty()) s += " *";
  return s;
}

inline std::string markdown_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Pairs up two reports measure by measure. Reports must share conventions.
inline ComparisonTable build_comparison(const MetricsReport& observed, const MetricsReport& counterfactual) {
  if (observed.conventions != counterfactual.conventions) {
    throw Error(ErrorCode::ConventionMismatch, "reports were computed with different conventions");
  }
  ComparisonTable t;
  t.observed_name = observed.view_name;
  t.counterfactual_name = counterfactual.view_name;
  t.conventions = observed.conventions;
  auto left = detail::report_cells(observed);
  auto right = detail::report_cells(counterfactual);
  std::map<std::string, ComparisonCell> rmap(right.begin(), right.end());
  for (auto& [name, cell] : left) {
    ComparisonRow row{name, cell, {}, std::nullopt};
    if (auto it = rmap.find(name); it != rmap.end()) row.counterfactual = it->second;
    if (row.observed.value && row.counterfactual.value) {
      row.delta = *row.counterfactual.value - *row.observed.value;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline nlohmann::ordered_json provenance_json(const Provenance& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

inline std::string render_markdown_provenance(const Provenance& p) {
  if (p.empty()) return "";
  std::string out = "\nProvenance:\n";
  for (const auto& [k, v] : p) out += "- " + k + ": " + v + "\n";
  return out;
}

inline std::string render_csv_provenance(const Provenance& p) {
  std::string out;
  for (const auto& [k, v] : p) out += "# " + k + ": " + v + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["view"] = r.view_name;
  j["nodes"] = r.node_count;
  j["edges"] = r.edge_count;
  j["density"] = opt(r.density);
  j["fragmentation"] = opt(r.fragmentation);
  j["degree_centralisation"] = {{"all", opt(r.degree_centralisation_all)},
                                {"in", opt(r.degree_centralisation_in)},
                                {"out", opt(r.degree_centralisation_out)}};
  j["betweenness_centralisation"] = opt(r.betweenness_centralisation);
  j["transitivity"] = opt(r.transitivity);
  if (r.modularity) {
    j["modularity"] = {{"score", r.modularity->score},
                       {"community_count", r.modularity->community_count},
                       {"seed", r.modularity->seed}};
  } else {
    j["modularity"] = nullptr;
  }
  j["average_distance"] = opt(r.average_distance);
  j["average_degree"] = opt(r.average_degree);
  j["assortativity"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.assortativity) j["assortativity"][k] = opt(v);
  if (r.core_periphery) {
    std::vector<std::string> ids;
    for (const auto& id : r.core_periphery->core_ids) ids.push_back(id.value);
    j["core_periphery"] = {{"fit", r.core_periphery->fit},
                           {"iterations", r.core_periphery->iterations},
                           {"core_ids", ids}};
  } else {
    j["core_periphery"] = nullptr;
  }
  j["flags"] = r.flags;
  j["conventions"] = r.conventions;
  return j;
}

/// Renders a two-view comparison. Numbers carry four significant digits.
inline std::string render_comparison(const MetricsReport& observed, const MetricsReport& counterfactual,
                                     ReportFormat format, const Provenance& provenance = {}) {
  const auto t = build_comparison(observed, counterfactual);
  std::string out;
  switch (format) {
    case ReportFormat::Markdown: {
      out += "| Measure | " + detail::markdown_escape(t.observed_name) + " | " +
             detail::markdown_escape(t.counterfactual_name) + " | Delta |\n";
      out += "|---|---|---|---|\n";
      std::vector<std::string> flags;
      for (const auto& r : t.rows) {
        out += "| " + r.measure + " | " + detail::cell_text(r.observed) + " | " +
               detail::cell_text(r.counterfactual) + " | " + (r.delta ? format_sig4(*r.delta) : "n/a") + " |\n";
        if (!r.observed.flag.empty()) flags.push_back(r.measure + " (" + t.observed_name + "): " + r.observed.flag);
        if (!r.counterfactual.flag.empty()) {
          flags.push_back(r.measure + " (" + t.counterfactual_name + "): " + r.counterfactual.flag);
        }
      }
      out += "\nDelta = " + t.counterfactual_name + " - " + t.observed_name + ".\n";
      out += "\nConventions:\n";
      for (const auto& [k, v] : t.conventions) out += "- " + k + ": " + v + "\n";
      if (!flags.empty()) {
        out += "\nFlags (*):\n";
        for (const auto& f : flags) out += "- " + f + "\n";
      }
      out += render_markdown_provenance(provenance);
      return out;
    }
    case ReportFormat::Csv: {
      out += render_csv_provenance(provenance);
      for (const auto& [k, v] : t.conventions) out += "# convention " + k + ": " + v + "\n";
      out += "# delta: " + t.counterfactual_name + " - " + t.observed_name + "\n";
      out += "measure,observed,counterfactual,delta,observed_note,counterfactual_note,observed_flag,"
             "counterfactual_flag\n";
      auto num = [](const std::optional<double>& v) { return v ? format_sig4(*v) : std::string(); };
      for (const auto& r : t.rows) {
        out += csv_line({r.measure, num(r.observed.value), num(r.counterfactual.value), num(r.delta),
                         r.observed.note, r.counterfactual.note, r.observed.flag, r.counterfactual.flag});
      }
      return out;
    }
    case ReportFormat::Json: {
      nlohmann::ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "whole_comparison";
      j["provenance"] = provenance_json(provenance);
      j["observed"] = to_json(observed);
      j["counterfactual"] = to_json(counterfactual);
      j["delta"] = t.counterfactual_name + " - " + t.observed_name;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["measure"] = r.measure;
        row["observed"] = r.observed.value ? nlohmann::ordered_json(*r.observed.value) : nullptr;
        row["counterfactual"] = r.counterfactual.value ? nlohmann::ordered_json(*r.counterfactual.value) : nullptr;
        row["delta"] = r.delta ? nlohmann::ordered_json(*r.delta) : nullptr;
        j["rows"].push_back(row);
      }
      return j.dump(2) + "\n";
    }
  }
  return out;
}

/// Single-view whole report, same row set as the comparison.
inline std::string render_report(const MetricsReport& r, ReportFormat format, const Provenance& provenance = {}) {
  const auto cells = detail::report_cells(r);
  std::string out;
  switch (format) {
    case ReportFormat::Markdown:
      out += "| Measure | " + detail::markdown_escape(r.view_name) + " |\n|---|---|\n";
      for (const auto& [name, c] : cells) out += "| " + name + " | " + detail::cell_text(c) + " |\n";
      out += "\nConventions:\n";
      for (const auto& [k, v] : r.conventions) out += "- " + k + ": " + v + "\n";
      if (!r.flags.empty()) {
        out += "\nFlags (*):\n";
        for (const auto& [k, v] : r.flags) out += "- " + k + ": " + v + "\n";
      }
      return out + render_markdown_provenance(provenance);
    case ReportFormat::Csv:
      out += render_csv_provenance(provenance);
      for (const auto& [k, v] : r.conventions) out += "# convention " + k + ": " + v + "\n";
      out += "measure,value,note,flag\n";
      for (const auto& [name, c] : cells) {
        out += csv_line({name, c.value ? format_sig4(*c.value) : "", c.note, c.flag});
      }
      return out;
    case ReportFormat::Json: {
      nlohmann::ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "whole_report";
      j["provenance"] = provenance_json(provenance);
      j["report"] = to_json(r);
      return j.dump(2) + "\n";
    }
  }
  return out;
}

namespace detail {

inline std::string ego_value_text(const EgoValue& v) {
  return format_fixed(v.value, 2) + (v.degenerate ? "*" : "");
}

inline std::vector<std::pair<std::string, std::string>> ego_cells(const EgoSummary& s) {
  return {
      {"Density", ego_value_text(s.neighborhood_density)},
      {"Average distance", ego_value_text(s.neighborhood_avg_distance)},
      {"Two-step reach", std::to_string(s.two_step_reach.count)},
      {"Two-step reach (normalized)",
       s.two_step_reach.normalized ? format_fixed(*s.two_step_reach.normalized, 4) : "n/a*"},
      {"Reach efficiency", s.reach_efficiency ? format_fixed(*s.reach_efficiency, 2) : "n/a*"},
      {"Betweenness centrality (normalized)",
       s.betweenness_normalized ? format_fixed(*s.betweenness_normalized, 2) : "n/a*"},
  };
}

}  // namespace detail

/// One column per requested ego, one row per measure. With a counterfactual
/// every cell reads "observed | counterfactual". A trailing '*' marks a
/// degenerate value (fewer than two neighbours, isolated ego, no alters).
inline std::string render_ego_table(const std::vector<PersonId>& egos,
                                    const std::map<PersonId, EgoSummary>& observed,
                                    const std::map<PersonId, EgoSummary>* counterfactual, ReportFormat format,
                                    const Provenance& provenance = {}) {
  std::vector<std::vector<std::pair<std::string, std::string>>> left, right;
  for (const auto& e : egos) {
    auto it = observed.find(e);
    if (it == observed.end()) throw Error(ErrorCode::UnknownEgo, "'" + e.value + "' missing from observed view");
    left.push_back(detail::ego_cells(it->second));
    if (counterfactual) {
      auto jt = counterfactual->find(e);
      if (jt == counterfactual->end()) {
        throw Error(ErrorCode::UnknownEgo, "'" + e.value + "' missing from counterfactual view");
      }
      right.push_back(detail::ego_cells(jt->second));
    }
  }
  const std::size_t rows = detail::ego_cells(EgoSummary{}).size();
  auto cell = [&](std::size_t col, std::size_t row) {
    std::string s = left[col][row].second;
    if (counterfactual) s += " | " + right[col][row].second;
    return s;
  };

  std::string out;
  switch (format) {
    case ReportFormat::Markdown: {
      out += "| Measure |";
      for (const auto& e : egos) out += " " + detail::markdown_escape(e.value) + " |";
      out += "\n|---|";
      for (std::size_t i = 0; i < egos.size(); ++i) out += "---|";
      out += "\n";
      for (std::size_t r = 0; r < rows; ++r) {
        out += "| " + detail::ego_cells(EgoSummary{})[r].first + " |";
        for (std::size_t c = 0; c < egos.size(); ++c) out += " " + detail::markdown_escape(cell(c, r)) + " |";
        out += "\n";
      }
      out += "\nDensity and average distance are computed on the subgraph induced on each ego's "
             "in- and out-neighbours; average distance is the mean of 1/d over ordered neighbour "
             "pairs (0 when unreachable). * marks a degenerate value.\n";
      return out + render_markdown_provenance(provenance);
    }
    case ReportFormat::Csv: {
      out += render_csv_provenance(provenance);
      std::vector<std::string> header{"measure"};
      for (const auto& e : egos) header.push_back(e.value);
      out += csv_line(header);
      for (std::size_t r = 0; r < rows; ++r) {
        std::vector<std::string> line{detail::ego_cells(EgoSummary{})[r].first};
        for (std::size_t c = 0; c < egos.size(); ++c) line.push_back(cell(c, r));
        out += csv_line(line);
      }
      return out;
    }
    case ReportFormat::Json: {
      nlohmann::ordered_json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "ego_table";
      j["provenance"] = provenance_json(provenance);
      j["columns"] = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < egos.size(); ++c) {
        nlohmann::ordered_json col;
        col["ego"] = egos[c].value;
        for (std::size_t r = 0; r < rows; ++r) {
          col["observed"][left[c][r].first] = left[c][r].second;
          if (counterfactual) col["counterfactual"][right[c][r].first] = right[c][r].second;
        }
        j["columns"].push_back(col);
      }
      return j.dump(2) + "\n";
    }
  }
  return out;
}

inline std::string render_brokerage(const std::map<PersonId, BrokerageProfile>& profiles, ReportFormat format,
                                    const Provenance& provenance = {}) {
  std::string out;
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "brokerage";
    j["provenance"] = provenance_json(provenance);
    j["egos"] = nlohmann::ordered_json::array();
    for (const auto& [id, p] : profiles) {
      j["egos"].push_back({{"ego", id.value},
                           {"coordinator", p.coordinator},
                           {"consultant", p.consultant},
                           {"gatekeeper", p.gatekeeper},
                           {"representative", p.representative},
                           {"liaison", p.liaison},
                           {"grouping", p.grouping_key}});
    }
    return j.dump(2) + "\n";
  }
  const bool md = format == ReportFormat::Markdown;
  if (!md) out += render_csv_provenance(provenance);
  out += md ? "| ego | coordinator | consultant | gatekeeper | representative | liaison |\n|---|---|---|---|---|---|\n"
            : "ego,coordinator,consultant,gatekeeper,representative,liaison\n";
  for (const auto& [id, p] : profiles) {
    std::vector<std::string> f{id.value, std::to_string(p.coordinator), std::to_string(p.consultant),
                               std::to_string(p.gatekeeper), std::to_string(p.representative),
                               std::to_string(p.liaison)};
    if (md) {
      out += "|";
      for (auto& x : f) out += " " + detail::markdown_escape(x) + " |";
      out += "\n";
    } else {
      out += csv_line(f);
    }
  }
  if (md) out += render_markdown_provenance(provenance);
  return out;
}

inline nlohmann::ordered_json to_json(const EldaSummary& s) {
  return {{"ego_count", s.ego_count},
          {"total_pairs", s.total_pairs},
          {"direct", s.direct},
          {"ego_mediated", s.ego_mediated},
          {"alter_mediated_distinct", s.alter_mediated_distinct},
          {"alter_mediated_triplets", s.alter_mediated_triplets},
          {"disconnected", s.disconnected},
          {"elda_ratio_distinct", s.elda_ratio},
          {"elda_ratio_triplets", s.triplet_ratio},
          {"involved_alters", s.involved_alters}};
}

inline std::string render_elda_summary(const std::vector<std::pair<std::string, EldaSummary>>& views,
                                       ReportFormat format, const Provenance& provenance = {}) {
  std::string out;
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "elda_summary";
    j["provenance"] = provenance_json(provenance);
    for (const auto& [name, s] : views) j["views"][name] = to_json(s);
    return j.dump(2) + "\n";
  }
  const std::vector<std::string> fields{"ego_count", "total_pairs", "direct", "ego_mediated",
                                        "alter_mediated_distinct", "alter_mediated_triplets", "disconnected",
                                        "elda_ratio_distinct", "elda_ratio_triplets", "involved_alters"};
  auto values = [](const EldaSummary& s) {
    return std::vector<std::string>{
        std::to_string(s.ego_count), std::to_string(s.total_pairs), std::to_string(s.direct),
        std::to_string(s.ego_mediated), std::to_string(s.alter_mediated_distinct),
        std::to_string(s.alter_mediated_triplets), std::to_string(s.disconnected), format_sig4(s.elda_ratio),
        format_sig4(s.triplet_ratio), std::to_string(s.involved_alters)};
  };
  if (format == ReportFormat::Csv) {
    out += render_csv_provenance(provenance);
    std::vector<std::string> header{"view"};
    header.insert(header.end(), fields.begin(), fields.end());
    out += csv_line(header);
    for (const auto& [name, s] : views) {
      auto v = values(s);
      v.insert(v.begin(), name);
      out += csv_line(v);
    }
    return out;
  }
  out += "| field |";
  for (const auto& [name, _] : views) out += " " + detail::markdown_escape(name) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < views.size(); ++i) out += "---|";
  out += "\n";
  for (std::size_t f = 0; f < fields.size(); ++f) {
    out += "| " + fields[f] + " |";
    for (const auto& [_, s] : views) out += " " + values(s)[f] + " |";
    out += "\n";
  }
  return out + render_markdown_provenance(provenance);
}

inline std::string render_ranking(const std::vector<std::pair<std::string, AlterRanking>>& views,
                                  ReportFormat format, const Provenance& provenance = {}) {
  std::string out;
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "alter_ranking";
    j["provenance"] = provenance_json(provenance);
    for (const auto& [name, r] : views) {
      j["views"][name] = nlohmann::ordered_json::array();
      for (const auto& e : r.entries) j["views"][name].push_back({{"alter", e.alter.value}, {"r", e.mediated_pairs}});
    }
    return j.dump(2) + "\n";
  }
  const bool md = format == ReportFormat::Markdown;
  if (!md) out += render_csv_provenance(provenance);
  out += md ? "| view | rank | alter | R |\n|---|---|---|---|\n" : "view,rank,alter,r\n";
  for (const auto& [name, r] : views) {
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      std::vector<std::string> f{name, std::to_string(i + 1), r.entries[i].alter.value,
                                 std::to_string(r.entries[i].mediated_pairs)};
      if (md) {
        out += "|";
        for (auto& x : f) out += " " + detail::markdown_escape(x) + " |";
        out += "\n";
      } else {
        out += csv_line(f);
      }
    }
  }
  if (md) out += render_markdown_provenance(provenance);
  return out;
}

/// One record per ego pair: first,second,class,mediators (';'-joined).
inline std::string render_pairs_csv(const std::vector<PairClass>& pairs, const Provenance& provenance = {}) {
  std::string out = render_csv_provenance(provenance);
  out += "first,second,class,mediators\n";
  for (const auto& p : pairs) {
    std::vector<std::string> ids;
    for (const auto& m : p.mediators) ids.push_back(m.value);
    out += csv_line({p.first.value, p.second.value, std::string(to_string(p.kind)), join_list(ids)});
  }
  return out;
}

}  // namespace egonet
