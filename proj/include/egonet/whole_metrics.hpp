#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egonet/core_periphery.hpp"
#include "egonet/error.hpp"
#include "egonet/louvain.hpp"
#include "egonet/network.hpp"
#include "egonet/paths.hpp"

namespace egonet {

namespace detail {
inline void require_nodes(const CommunityNetwork& net, std::size_t k, const char* what) {
  if (net.node_count() < k) {
    throw Error(ErrorCode::TooFewNodes, std::string(what) + " needs at least " +
                                            std::to_string(k) + " nodes");
  }
}
inline double n_of(const CommunityNetwork& net) { return static_cast<double>(net.node_count()); }
}  // namespace detail

/// |E| / (n (n - 1)) on the directed graph.
inline double density(const CommunityNetwork& net) {
  detail::require_nodes(net, 2, "density");
  const double n = detail::n_of(net);
  return static_cast<double>(net.edge_count()) / (n * (n - 1.0));
}

enum class FragmentationMode { Undirected, Directed };

/// Share of node pairs with no connecting path. Undirected mode counts
/// unordered pairs on the projection; directed mode counts ordered pairs
/// (u, v) with no directed path from u to v.
inline double fragmentation(const CommunityNetwork& net,
                            FragmentationMode mode = FragmentationMode::Undirected) {
  detail::require_nodes(net, 2, "fragmentation");
  const double n = detail::n_of(net);
  if (mode == FragmentationMode::Undirected) {
    std::size_t count = 0;
    const auto label = weak_components(net, &count);
    std::vector<double> size(count, 0.0);
    for (auto l : label) size[l] += 1.0;
    double connected = 0.0;
    for (double s : size) connected += s * (s - 1.0) / 2.0;
    return 1.0 - connected / (n * (n - 1.0) / 2.0);
  }
  double reachable = 0.0;
  for (NodeIndex s = 0; s < net.node_count(); ++s) {
    for (auto d : bfs_distances(net, s)) reachable += (d != kUnreachable && d > 0);
  }
  return 1.0 - reachable / (n * (n - 1.0));
}

enum class DegreeMode { All, In, Out };

/// Freeman degree centralisation. `All` uses degrees on the undirected
/// projection (maximum sum (n-1)(n-2)); `In`/`Out` use directed degrees
/// (maximum sum (n-1)^2).
inline double degree_centralisation(const CommunityNetwork& net, DegreeMode mode) {
  detail::require_nodes(net, 3, "degree centralisation");
  const double n = detail::n_of(net);
  std::vector<double> degree(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    switch (mode) {
      case DegreeMode::All: degree[v] = static_cast<double>(net.neighbors(v).size()); break;
      case DegreeMode::In: degree[v] = static_cast<double>(net.in_degree(v)); break;
      case DegreeMode::Out: degree[v] = static_cast<double>(net.out_degree(v)); break;
    }
  }
  const double max = *std::max_element(degree.begin(), degree.end());
  double sum = 0.0;
  for (double d : degree) sum += max - d;
  const double bound = mode == DegreeMode::All ? (n - 1.0) * (n - 2.0) : (n - 1.0) * (n - 1.0);
  return sum / bound;
}

/// Freeman centralisation of directed betweenness, normalised by the
/// directed star maximum (n-1)^2 (n-2).
inline double betweenness_centralisation(const CommunityNetwork& net) {
  detail::require_nodes(net, 3, "betweenness centralisation");
  const double n = detail::n_of(net);
  const auto c = betweenness(net);
  const double max = *std::max_element(c.begin(), c.end());
  double sum = 0.0;
  for (double v : c) sum += max - v;
  return sum / ((n - 1.0) * (n - 1.0) * (n - 2.0));
}

/// Global transitivity of the undirected projection: closed / connected
/// triples. 0 when there are no connected triples.
inline double transitivity(const CommunityNetwork& net) {
  detail::require_nodes(net, 3, "transitivity");
  const auto g = undirected_projection(net);
  double triples = 0.0;
  double closed = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto& adj = g.adjacency[v];
    const double d = static_cast<double>(adj.size());
    triples += d * (d - 1.0) / 2.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (std::size_t j = i + 1; j < adj.size(); ++j) closed += g.has_edge(adj[i], adj[j]);
    }
  }
  return triples == 0.0 ? 0.0 : closed / triples;
}

inline ModularityResult modularity(const CommunityNetwork& net, std::uint64_t seed) {
  detail::require_nodes(net, 2, "modularity");
  return louvain(undirected_projection(net), seed);
}

/// Mean directed shortest-path length over ordered reachable pairs.
inline double average_distance(const CommunityNetwork& net) {
  detail::require_nodes(net, 2, "average distance");
  double total = 0.0;
  double pairs = 0.0;
  for (NodeIndex s = 0; s < net.node_count(); ++s) {
    for (auto d : bfs_distances(net, s)) {
      if (d != kUnreachable && d > 0) {
        total += static_cast<double>(d);
        pairs += 1.0;
      }
    }
  }
  return pairs == 0.0 ? 0.0 : total / pairs;
}

inline double average_degree(const CommunityNetwork& net) {
  if (net.node_count() == 0) throw Error(ErrorCode::TooFewNodes, "average degree needs a node");
  return static_cast<double>(net.edge_count()) / detail::n_of(net);
}

/// Categorical value of a node for assortativity and brokerage grouping.
///
/// Keys: "gender"; "projects" (participant iff the project set is nonempty);
/// "tag:<name>" reads the value of a role tag written as "<name>=<value>".
/// Missing values map to "unknown".
inline std::string attribute_value(const PersonAttributes& a, const std::string& key) {
  if (key == "gender") return a.gender.empty() ? "unknown" : a.gender;
  if (key == "projects") return a.projects.empty() ? "non-participant" : "participant";
  if (key.rfind("tag:", 0) == 0) {
    const std::string prefix = key.substr(4) + "=";
    for (const auto& t : a.role_tags) {
      if (t.rfind(prefix, 0) == 0) return t.substr(prefix.size());
    }
    return "unknown";
  }
  throw Error(ErrorCode::InvalidConfig, "unknown attribute key '" + key + "'");
}

/// Newman categorical assortativity over directed edges,
/// r = (sum_i e_ii - sum_i a_i b_i) / (1 - sum_i a_i b_i).
inline double assortativity(const CommunityNetwork& net, const std::string& key) {
  std::map<std::string, std::size_t> category;
  std::vector<std::size_t> of(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    auto [it, _] = category.emplace(attribute_value(net.attributes(v), key), category.size());
    of[v] = it->second;
  }
  if (net.edge_count() == 0) {
    throw Error(ErrorCode::DegenerateAttribute, "assortativity by " + key + " needs edges");
  }
  const std::size_t k = category.size();
  std::vector<double> a(k, 0.0), b(k, 0.0);
  double trace = 0.0;
  const double m = static_cast<double>(net.edge_count());
  for (const auto& e : net.edges()) {
    a[of[e.source]] += 1.0 / m;
    b[of[e.target]] += 1.0 / m;
    if (of[e.source] == of[e.target]) trace += 1.0 / m;
  }
  double expected = 0.0;
  for (std::size_t i = 0; i < k; ++i) expected += a[i] * b[i];
  if (1.0 - expected <= 1e-15) {
    throw Error(ErrorCode::DegenerateAttribute,
                "assortativity by " + key + " is undefined: edges span a single category");
  }
  return (trace - expected) / (1.0 - expected);
}

inline CorePeripheryResult core_periphery_fit(const CommunityNetwork& net, std::size_t iterations,
                                              std::uint64_t seed) {
  detail::require_nodes(net, 3, "core/periphery");
  return core_periphery_fit(undirected_projection(net), iterations, seed);
}

struct WholeConfig {
  std::uint64_t seed = 1;
  std::size_t cp_iterations = 20;
  FragmentationMode fragmentation_mode = FragmentationMode::Undirected;
  std::vector<std::string> assortativity_keys{"gender", "projects"};
};

struct CorePeripherySummary {
  double fit = 0.0;
  std::size_t iterations = 0;
  std::vector<PersonId> core_ids;
};

struct ModularitySummary {
  double score = 0.0;
  std::size_t community_count = 0;
  std::uint64_t seed = 0;
};

/// Whole-network measure suite for one network view. A measure that could
/// not be computed is left empty and named in `flags` with the reason.
struct MetricsReport {
  std::string view_name;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::optional<double> density;
  std::optional<double> fragmentation;
  std::optional<double> degree_centralisation_all;
  std::optional<double> degree_centralisation_in;
  std::optional<double> degree_centralisation_out;
  std::optional<double> betweenness_centralisation;
  std::optional<double> transitivity;
  std::optional<ModularitySummary> modularity;
  std::optional<double> average_distance;
  std::optional<double> average_degree;
  std::map<std::string, std::optional<double>> assortativity;
  std::optional<CorePeripherySummary> core_periphery;
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> conventions;
};

inline std::map<std::string, std::string> whole_conventions(const WholeConfig& config) {
  return {
      {"density", "directed: |E| / (n(n-1))"},
      {"fragmentation", config.fragmentation_mode == FragmentationMode::Undirected
                            ? "undirected projection, unordered pairs"
                            : "directed, ordered pairs"},
      {"degree_centralisation", "Freeman; all = undirected projection / (n-1)(n-2); "
                                "in, out = directed / (n-1)^2"},
      {"betweenness_centralisation", "Freeman over directed betweenness / (n-1)^2(n-2)"},
      {"transitivity", "undirected projection, 3 x triangles / connected triples"},
      {"modularity", "Louvain on undirected projection, unit weights, seed " +
                         std::to_string(config.seed)},
      {"average_distance", "directed, mean over reachable ordered pairs"},
      {"average_degree", "directed: |E| / n"},
      {"assortativity", "Newman categorical over directed edges"},
      {"core_periphery", "discrete model on undirected projection, " +
                             std::to_string(config.cp_iterations) +
                             " hill-climbing restarts, seed " + std::to_string(config.seed)},
  };
}

inline MetricsReport whole_report(const CommunityNetwork& net, const WholeConfig& config,
                                  std::string view_name = "observed") {
  MetricsReport r;
  r.view_name = std::move(view_name);
  r.node_count = net.node_count();
  r.edge_count = net.edge_count();
  r.conventions = whole_conventions(config);

  auto guarded = [&](const std::string& name, auto&& compute) {
    try {
      compute();
    } catch (const Error& e) {
      r.flags[name] = e.what();
    }
  };
  guarded("density", [&] { r.density = density(net); });
  guarded("fragmentation", [&] { r.fragmentation = fragmentation(net, config.fragmentation_mode); });
  guarded("degree_centralisation", [&] {
    r.degree_centralisation_all = degree_centralisation(net, DegreeMode::All);
    r.degree_centralisation_in = degree_centralisation(net, DegreeMode::In);
    r.degree_centralisation_out = degree_centralisation(net, DegreeMode::Out);
  });
  guarded("betweenness_centralisation",
          [&] { r.betweenness_centralisation = betweenness_centralisation(net); });
  guarded("transitivity", [&] { r.transitivity = transitivity(net); });
  guarded("modularity", [&] {
    auto m = modularity(net, config.seed);
    r.modularity = ModularitySummary{m.score, m.community_count, m.seed};
  });
  guarded("average_distance", [&] { r.average_distance = average_distance(net); });
  guarded("average_degree", [&] { r.average_degree = average_degree(net); });
  for (const auto& key : config.assortativity_keys) {
    r.assortativity[key] = std::nullopt;
    guarded("assortativity:" + key, [&] { r.assortativity[key] = assortativity(net, key); });
  }
  guarded("core_periphery", [&] {
    auto cp = core_periphery_fit(net, config.cp_iterations, config.seed);
    if (cp.degenerate) {
      r.flags["core_periphery"] = "degenerate: adjacency is constant, fit reported as 0";
    }
    CorePeripherySummary s{cp.fit, cp.iterations, {}};
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      if (cp.core[v]) s.core_ids.push_back(net.id(v));
    }
    r.core_periphery = std::move(s);
  });
  return r;
}

}  // namespace egonet
