#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egonet/error.hpp"
#include "egonet/network.hpp"
#include "egonet/paths.hpp"
#include "egonet/whole_metrics.hpp"

namespace egonet {

namespace detail {
inline NodeIndex require_ego(const CommunityNetwork& net, const PersonId& ego) {
  auto v = net.find(ego);
  if (!v || !net.is_ego(*v)) throw Error(ErrorCode::UnknownEgo, "'" + ego.value + "' is not an ego");
  return *v;
}
}  // namespace detail

struct TwoStepReach {
  std::size_t count = 0;
  std::optional<double> normalized;  // count / |V_a|; empty when there are no alters
};

/// Nodes reachable from the ego along out-edges in at most two steps.
inline TwoStepReach two_step_reach(const CommunityNetwork& net, const PersonId& ego) {
  const NodeIndex v = detail::require_ego(net, ego);
  TwoStepReach r;
  for (auto d : bfs_distances(net, v, 2)) r.count += (d == 1 || d == 2);
  if (net.alter_count() > 0) {
    r.normalized = static_cast<double>(r.count) / static_cast<double>(net.alter_count());
  }
  return r;
}

/// 100 * two-step reach / neighbour count (in- and out-neighbours).
/// Values above 100 are legal.
inline double reach_efficiency(const CommunityNetwork& net, const PersonId& ego) {
  const NodeIndex v = detail::require_ego(net, ego);
  const auto k = net.neighbors(v).size();
  if (k == 0) throw Error(ErrorCode::IsolatedEgo, "'" + ego.value + "' has no neighbours");
  return 100.0 * static_cast<double>(two_step_reach(net, ego).count) / static_cast<double>(k);
}

struct EgoBetweenness {
  std::map<PersonId, double> percent;  // sums to 100 unless degenerate
  bool degenerate = false;             // every ego has zero betweenness
};

/// Directed betweenness of each ego over the full network, rescaled so the
/// ego values sum to 100.
inline EgoBetweenness ego_betweenness_normalized(const CommunityNetwork& net) {
  detail::require_nodes(net, 3, "ego betweenness");
  const auto c = betweenness(net);
  double total = 0.0;
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (net.is_ego(v)) {
      total += c[v];
    } else if (c[v] != 0.0) {
      throw Error(ErrorCode::InvalidNetwork, "alter '" + net.id(v).value + "' relays shortest paths");
    }
  }
  EgoBetweenness out;
  out.degenerate = total == 0.0;
  for (auto v : net.egos()) out.percent[net.id(v)] = out.degenerate ? 0.0 : 100.0 * c[v] / total;
  return out;
}

/// A per-ego value that may be a reported convention rather than a measure.
struct EgoValue {
  double value = 0.0;
  bool degenerate = false;
};

/// 100 * directed edges among the ego's neighbours / (k (k - 1)).
/// Fewer than two neighbours reports 0 with the degenerate flag.
inline EgoValue neighborhood_density(const CommunityNetwork& net, const PersonId& ego) {
  const NodeIndex v = detail::require_ego(net, ego);
  const auto nb = net.neighbors(v);
  if (nb.size() < 2) return {0.0, true};
  std::size_t edges = 0;
  for (auto u : nb) {
    for (auto w : net.successors(u)) edges += std::binary_search(nb.begin(), nb.end(), w);
  }
  const double k = static_cast<double>(nb.size());
  return {100.0 * static_cast<double>(edges) / (k * (k - 1.0)), false};
}

/// Mean of 1/d over ordered neighbour pairs, d being the directed distance
/// inside the subgraph induced on the neighbours (0 when unreachable).
/// This is a closeness-style quantity in [0, 1].
inline EgoValue neighborhood_avg_distance(const CommunityNetwork& net, const PersonId& ego) {
  const NodeIndex v = detail::require_ego(net, ego);
  const auto nb = net.neighbors(v);
  if (nb.size() < 2) return {0.0, true};
  const std::size_t k = nb.size();
  auto local = [&](NodeIndex u) -> std::size_t {
    auto it = std::lower_bound(nb.begin(), nb.end(), u);
    return (it != nb.end() && *it == u) ? static_cast<std::size_t>(it - nb.begin()) : k;
  };
  double sum = 0.0;
  std::vector<std::size_t> dist(k);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < k; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (auto w : net.successors(nb[x])) {
        const std::size_t y = local(w);
        if (y < k && dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (t != s && dist[t] != kUnreachable) sum += 1.0 / static_cast<double>(dist[t]);
    }
  }
  const double kk = static_cast<double>(k);
  return {sum / (kk * (kk - 1.0)), false};
}

enum class BrokerageRole { Coordinator, Consultant, Gatekeeper, Representative, Liaison };

/// Gould-Fernandez role of broker b for the open two-path s -> b -> t.
inline BrokerageRole classify_brokerage(const std::string& gs, const std::string& gb,
                                        const std::string& gt) {
  if (gs == gb && gb == gt) return BrokerageRole::Coordinator;
  if (gs == gt) return BrokerageRole::Consultant;
  if (gs == gb) return BrokerageRole::Gatekeeper;
  if (gb == gt) return BrokerageRole::Representative;
  return BrokerageRole::Liaison;
}

struct BrokerageProfile {
  PersonId ego;
  std::size_t coordinator = 0;
  std::size_t consultant = 0;
  std::size_t gatekeeper = 0;
  std::size_t representative = 0;
  std::size_t liaison = 0;
  std::string grouping_key;

  std::size_t total() const {
    return coordinator + consultant + gatekeeper + representative + liaison;
  }
  bool operator==(const BrokerageProfile&) const = default;
};

/// Node category for brokerage. `key` is "projects" (first project found in
/// `precedence`, else the alphabetically first project, else "none"),
/// "gender", or "tag:<name>".
struct Grouping {
  std::string key = "projects";
  std::vector<std::string> project_precedence;

  std::string category(const PersonAttributes& a) const {
    if (key != "projects") {
      auto v = attribute_value(a, key);
      return v == "unknown" ? "none" : v;
    }
    for (const auto& p : project_precedence) {
      if (a.projects.count(p)) return p;
    }
    return a.projects.empty() ? "none" : *a.projects.begin();
  }
};

/// Brokerage role counts for every ego, keyed by ego id. Only open two-paths
/// (s -> b -> t, s != t, no s -> t edge) count.
inline std::map<PersonId, BrokerageProfile> brokerage_roles(const CommunityNetwork& net,
                                                            const Grouping& grouping) {
  std::vector<std::string> group(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) group[v] = grouping.category(net.attributes(v));

  std::map<PersonId, BrokerageProfile> out;
  for (NodeIndex b = 0; b < net.node_count(); ++b) {
    if (!net.is_ego(b)) {
      if (net.out_degree(b) != 0) {
        throw Error(ErrorCode::InvalidNetwork, "alter '" + net.id(b).value + "' has out-edges");
      }
      continue;
    }
    BrokerageProfile p;
    p.ego = net.id(b);
    p.grouping_key = grouping.key;
    for (auto s : net.predecessors(b)) {
      for (auto t : net.successors(b)) {
        if (s == t || net.has_edge(s, t)) continue;
        switch (classify_brokerage(group[s], group[b], group[t])) {
          case BrokerageRole::Coordinator: ++p.coordinator; break;
          case BrokerageRole::Consultant: ++p.consultant; break;
          case BrokerageRole::Gatekeeper: ++p.gatekeeper; break;
          case BrokerageRole::Representative: ++p.representative; break;
          case BrokerageRole::Liaison: ++p.liaison; break;
        }
      }
    }
    out.emplace(p.ego, std::move(p));
  }
  return out;
}

/// Per-ego measure row as printed in ego comparison tables.
struct EgoSummary {
  PersonId ego;
  EgoValue neighborhood_density;
  EgoValue neighborhood_avg_distance;
  TwoStepReach two_step_reach;
  std::optional<double> reach_efficiency;  // empty for an isolated ego
  std::optional<double> betweenness_normalized;
};

inline std::map<PersonId, EgoSummary> ego_summaries(const CommunityNetwork& net,
                                                    const std::vector<PersonId>& egos) {
  std::optional<EgoBetweenness> between;
  if (net.node_count() >= 3) between = ego_betweenness_normalized(net);
  std::map<PersonId, EgoSummary> out;
  for (const auto& e : egos) {
    EgoSummary s;
    s.ego = e;
    s.neighborhood_density = neighborhood_density(net, e);
    s.neighborhood_avg_distance = neighborhood_avg_distance(net, e);
    s.two_step_reach = two_step_reach(net, e);
    if (!net.neighbors(*net.find(e)).empty()) s.reach_efficiency = reach_efficiency(net, e);
    if (between) s.betweenness_normalized = between->percent.at(e);
    out.emplace(e, std::move(s));
  }
  return out;
}

}  // namespace egonet
