#pragma once

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/network.hpp"

namespace egonet {

enum class GraphFormat { GraphML, Dot, EdgeCsv };

inline GraphFormat parse_graph_format(std::string_view s) {
  if (s == "graphml") return GraphFormat::GraphML;
  if (s == "dot") return GraphFormat::Dot;
  if (s == "edge-csv" || s == "csv") return GraphFormat::EdgeCsv;
  throw Error(ErrorCode::UnsupportedFormat, "unsupported graph format '" + std::string(s) + "'");
}

inline constexpr std::string_view kNodesHeader = "id,role,gender,projects,role_tags";
inline constexpr std::string_view kEdgesHeader =
    "source,target,family,friend,coworker,other,from_project,pre_existing";

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

inline std::string render_graphml(const CommunityNetwork& net) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"role\" for=\"node\" attr.name=\"role\" attr.type=\"string\"/>\n"
      "  <key id=\"gender\" for=\"node\" attr.name=\"gender\" attr.type=\"string\"/>\n"
      "  <key id=\"projects\" for=\"node\" attr.name=\"projects\" attr.type=\"string\"/>\n"
      "  <key id=\"role_tags\" for=\"node\" attr.name=\"role_tags\" attr.type=\"string\"/>\n";
  for (auto name : kLabelNames) {
    out += "  <key id=\"" + std::string(name) + "\" for=\"edge\" attr.name=\"" + std::string(name) +
           "\" attr.type=\"boolean\"/>\n";
  }
  out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const auto& n : net.nodes()) {
    out += "    <node id=\"" + xml_escape(n.id.value) + "\">\n";
    out += "      <data key=\"role\">" + std::string(n.attributes.is_respondent ? "ego" : "alter") + "</data>\n";
    out += "      <data key=\"gender\">" + xml_escape(n.attributes.gender) + "</data>\n";
    out += "      <data key=\"projects\">" + xml_escape(join_list(n.attributes.projects)) + "</data>\n";
    out += "      <data key=\"role_tags\">" + xml_escape(join_list(n.attributes.role_tags)) + "</data>\n";
    out += "    </node>\n";
  }
  for (const auto& e : net.edges()) {
    out += "    <edge source=\"" + xml_escape(net.id(e.source).value) + "\" target=\"" +
           xml_escape(net.id(e.target).value) + "\">\n";
    for (std::size_t i = 0; i < std::size(kLabelNames); ++i) {
      out += "      <data key=\"" + std::string(kLabelNames[i]) + "\">" +
             (label_flag(e.labels, i) ? "true" : "false") + "</data>\n";
    }
    out += "    </edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

inline std::string render_dot(const CommunityNetwork& net) {
  std::string out = "digraph G {\n";
  for (const auto& n : net.nodes()) {
    out += "  " + dot_quote(n.id.value) + " [role=" + (n.attributes.is_respondent ? "ego" : "alter") +
           ", gender=" + dot_quote(n.attributes.gender) +
           ", projects=" + dot_quote(join_list(n.attributes.projects)) +
           ", role_tags=" + dot_quote(join_list(n.attributes.role_tags)) + "];\n";
  }
  for (const auto& e : net.edges()) {
    out += "  " + dot_quote(net.id(e.source).value) + " -> " + dot_quote(net.id(e.target).value) + " [";
    for (std::size_t i = 0; i < std::size(kLabelNames); ++i) {
      if (i) out += ", ";
      out += std::string(kLabelNames[i]) + "=" + (label_flag(e.labels, i) ? "1" : "0");
    }
    out += "];\n";
  }
  return out + "}\n";
}

}  // namespace detail

/// Edge list: one row per edge, label flags as 0/1 in kLabelNames order.
inline std::string export_edge_csv(const CommunityNetwork& net) {
  std::string out = std::string(kEdgesHeader) + "\n";
  for (const auto& e : net.edges()) {
    std::vector<std::string> row{net.id(e.source).value, net.id(e.target).value};
    for (std::size_t i = 0; i < std::size(kLabelNames); ++i) row.push_back(label_flag(e.labels, i) ? "1" : "0");
    out += csv_line(row);
  }
  return out;
}

/// Node table companion of the edge list.
inline std::string export_nodes_csv(const CommunityNetwork& net) {
  std::string out = std::string(kNodesHeader) + "\n";
  for (const auto& n : net.nodes()) {
    out += csv_line({n.id.value, n.attributes.is_respondent ? "ego" : "alter", n.attributes.gender,
                     join_list(n.attributes.projects), join_list(n.attributes.role_tags)});
  }
  return out;
}

inline std::string export_graph(const CommunityNetwork& net, GraphFormat format) {
  switch (format) {
    case GraphFormat::GraphML: return detail::render_graphml(net);
    case GraphFormat::Dot: return detail::render_dot(net);
    case GraphFormat::EdgeCsv: return export_edge_csv(net);
  }
  throw Error(ErrorCode::UnsupportedFormat, "unsupported graph format");
}

/// Rebuilds a network from export_nodes_csv / export_edge_csv output. When
/// `nodes_csv` is empty, nodes are inferred: edge sources are egos and
/// every other endpoint is an alter.
inline CommunityNetwork import_network(std::string_view nodes_csv, std::string_view edges_csv,
                                       ConflictPolicy conflict = ConflictPolicy::Reject) {
  std::vector<Diagnostic> diags;
  auto table = [&](std::string_view text, std::string_view header, const char* file) {
    auto rows = parse_csv(text, file, diags);
    if (rows.empty() || join_list(rows.front().fields, ",") != header) {
      throw Error(ErrorCode::SchemaMismatch, std::string(file) + " header must be '" + std::string(header) + "'");
    }
    rows.erase(rows.begin());
    for (const auto& r : rows) {
      const auto width = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',') + 1);
      if (r.fields.size() != width) {
        throw Error(ErrorCode::SchemaMismatch, std::string(file) + " row " + std::to_string(r.line) +
                                                   " has " + std::to_string(r.fields.size()) + " fields");
      }
    }
    return rows;
  };

  std::vector<Tie> ties;
  for (const auto& r : table(edges_csv, kEdgesHeader, "edges.csv")) {
    Tie t{PersonId(r.fields[0]), PersonId(r.fields[1]), {}, r.line};
    for (std::size_t i = 0; i < std::size(kLabelNames); ++i) {
      const auto& f = r.fields[i + 2];
      if (f != "0" && f != "1") {
        throw Error(ErrorCode::SchemaMismatch, "edges.csv row " + std::to_string(r.line) + ": flag must be 0 or 1");
      }
      set_label_flag(t.labels, i, f == "1");
    }
    ties.push_back(std::move(t));
  }

  std::vector<Node> nodes;
  if (!nodes_csv.empty()) {
    for (const auto& r : table(nodes_csv, kNodesHeader, "nodes.csv")) {
      if (r.fields[1] != "ego" && r.fields[1] != "alter") {
        throw Error(ErrorCode::SchemaMismatch, "nodes.csv row " + std::to_string(r.line) + ": role must be ego or alter");
      }
      Node n{PersonId(r.fields[0]), {}};
      n.attributes.is_respondent = r.fields[1] == "ego";
      n.attributes.gender = r.fields[2];
      for (auto& p : split_list(r.fields[3])) n.attributes.projects.insert(p);
      for (auto& t : split_list(r.fields[4])) n.attributes.role_tags.insert(t);
      nodes.push_back(std::move(n));
    }
  } else {
    std::set<PersonId> sources, all;
    for (const auto& t : ties) {
      sources.insert(t.source);
      all.insert(t.source);
      all.insert(t.target);
    }
    for (const auto& id : all) {
      Node n{id, {}};
      n.attributes.is_respondent = sources.count(id) > 0;
      nodes.push_back(std::move(n));
    }
  }
  return CommunityNetwork::from_parts(std::move(nodes), ties, conflict);
}

/// A network on disk is a directory holding nodes.csv and edges.csv. A plain
/// file path is read as an edge list with inferred nodes.
inline CommunityNetwork load_network(const std::filesystem::path& path,
                                     ConflictPolicy conflict = ConflictPolicy::Reject) {
  if (std::filesystem::is_directory(path)) {
    return import_network(read_file(path / "nodes.csv"), read_file(path / "edges.csv"), conflict);
  }
  return import_network("", read_file(path), conflict);
}

inline void save_network(const CommunityNetwork& net, const std::filesystem::path& dir) {
  write_file(dir / "nodes.csv", export_nodes_csv(net));
  write_file(dir / "edges.csv", export_edge_csv(net));
}

/// Suggested colours per project category, for external layout tools.
inline std::string export_palette(const CommunityNetwork& net) {
  static constexpr std::string_view kColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                                 "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a"};
  std::set<std::string> categories;
  for (const auto& n : net.nodes()) {
    categories.insert(n.attributes.projects.empty() ? "none" : *n.attributes.projects.begin());
  }
  std::string out = "category,color\n";
  std::size_t i = 0;
  for (const auto& c : categories) out += csv_line({c, std::string(kColors[i++ % std::size(kColors)])});
  return out;
}

}  // namespace egonet
