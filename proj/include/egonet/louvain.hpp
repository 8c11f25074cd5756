#pragma once

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "egonet/error.hpp"
#include "egonet/network.hpp"
#include "egonet/random.hpp"

namespace egonet {

struct ModularityResult {
  double score = 0.0;
  std::size_t community_count = 0;
  std::uint64_t seed = 0;
  /// Community label per node, numbered by first appearance in node order.
  std::vector<std::size_t> partition;
};

/// Newman-Girvan modularity of `partition` on an unweighted undirected graph:
/// Q = sum_c [ e_c / m - (d_c / 2m)^2 ].
inline double modularity_of(const SimpleGraph& g, const std::vector<std::size_t>& partition) {
  if (g.edge_count == 0) return 0.0;
  const double m = static_cast<double>(g.edge_count);
  std::size_t communities = 0;
  for (auto c : partition) communities = std::max(communities, c + 1);
  std::vector<double> internal(communities, 0.0);
  std::vector<double> degree(communities, 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    degree[partition[v]] += static_cast<double>(g.degree(v));
    for (auto w : g.adjacency[v]) {
      if (v < w && partition[v] == partition[w]) internal[partition[v]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < communities; ++c) {
    q += internal[c] / m - (degree[c] / (2.0 * m)) * (degree[c] / (2.0 * m));
  }
  return q;
}

namespace detail {

// Weighted graph used between Louvain levels. `self` holds the ordered-pair
// weight inside each super-node (twice the internal edge weight).
struct LouvainLevel {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> self;
};

// One local-moving phase. Returns true if any node changed community.
inline bool louvain_move(const LouvainLevel& g, std::vector<std::size_t>& community, Rng& rng) {
  const std::size_t n = g.adj.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    k[v] = g.self[v];
    for (auto& [w, wt] : g.adj[v]) k[v] += wt;
    two_m += k[v];
  }
  if (two_m == 0.0) return false;

  std::vector<double> total(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) total[community[v]] += k[v];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool moved_any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto v : order) {
      const std::size_t own = community[v];
      touched.clear();
      for (auto& [w, wt] : g.adj[v]) {
        const std::size_t c = community[w];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += wt;
      }
      total[own] -= k[v];
      std::size_t best = own;
      double best_gain = link[own] - total[own] * k[v] / two_m;
      for (auto c : touched) {
        const double gain = link[c] - total[c] * k[v] / two_m;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += k[v];
      for (auto c : touched) link[c] = 0.0;
      link[own] = 0.0;
      if (best != own) {
        community[v] = best;
        moved = true;
        moved_any = true;
      }
    }
  }
  return moved_any;
}

}  // namespace detail

/// Multi-level greedy modularity optimisation (Louvain) on the undirected
/// projection with unit weights. The node visiting order at every level is
/// the canonical order shuffled by an Rng seeded with `seed`.
inline ModularityResult louvain(const SimpleGraph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (g.edge_count == 0) throw Error(ErrorCode::NoEdges, "modularity needs at least one edge");

  detail::LouvainLevel level;
  level.adj.resize(n);
  level.self.assign(n, 0.0);
  for (NodeIndex v = 0; v < n; ++v) {
    for (auto w : g.adjacency[v]) level.adj[v].emplace_back(w, 1.0);
  }
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);

  Rng rng(seed);
  while (true) {
    const std::size_t size = level.adj.size();
    std::vector<std::size_t> community(size);
    std::iota(community.begin(), community.end(), 0);
    if (!detail::louvain_move(level, community, rng)) break;

    // Compact labels in order of first appearance.
    std::vector<std::size_t> relabel(size, SIZE_MAX);
    std::size_t next = 0;
    for (auto& c : community) {
      if (relabel[c] == SIZE_MAX) relabel[c] = next++;
      c = relabel[c];
    }
    for (auto& m : membership) m = community[m];

    detail::LouvainLevel coarse;
    coarse.adj.resize(next);
    coarse.self.assign(next, 0.0);
    std::vector<std::unordered_map<std::size_t, double>> acc(next);
    for (std::size_t v = 0; v < size; ++v) {
      coarse.self[community[v]] += level.self[v];
      for (auto& [w, wt] : level.adj[v]) {
        if (community[v] == community[w]) {
          coarse.self[community[v]] += wt;
        } else {
          acc[community[v]][community[w]] += wt;
        }
      }
    }
    for (std::size_t c = 0; c < next; ++c) {
      coarse.adj[c].assign(acc[c].begin(), acc[c].end());
      std::sort(coarse.adj[c].begin(), coarse.adj[c].end());
    }
    level = std::move(coarse);
    if (next == size) break;
  }

  ModularityResult result;
  result.seed = seed;
  std::vector<std::size_t> relabel(n, SIZE_MAX);
  std::size_t next = 0;
  result.partition.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& c = relabel[membership[v]];
    if (c == SIZE_MAX) c = next++;
    result.partition[v] = c;
  }
  result.community_count = next;
  result.score = modularity_of(g, result.partition);
  return result;
}

}  // namespace egonet
