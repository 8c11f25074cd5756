#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "egonet/network.hpp"

namespace egonet {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Directed BFS distances from `source`; kUnreachable where no path exists.
/// `max_depth` stops the search early.
inline std::vector<std::size_t> bfs_distances(const CommunityNetwork& net, NodeIndex source,
                                              std::size_t max_depth = kUnreachable) {
  std::vector<std::size_t> dist(net.node_count(), kUnreachable);
  std::queue<NodeIndex> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop();
    if (dist[v] >= max_depth) continue;
    for (auto w : net.successors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

/// Directed betweenness centrality (unnormalised ordered-pair sum) using
/// Brandes' dependency accumulation. Sources are processed in index order so
/// the floating-point reduction order is fixed.
inline std::vector<double> betweenness(const CommunityNetwork& net) {
  const std::size_t n = net.node_count();
  std::vector<double> centrality(n, 0.0);
  std::vector<NodeIndex> order;
  std::vector<std::vector<NodeIndex>> preds(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::size_t> dist(n);
  order.reserve(n);

  for (NodeIndex s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kUnreachable);
    sigma[s] = 1.0;
    dist[s] = 0;

    std::queue<NodeIndex> queue;
    queue.push(s);
    while (!queue.empty()) {
      NodeIndex v = queue.front();
      queue.pop();
      order.push_back(v);
      for (auto w : net.successors(v)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeIndex w = *it;
      for (auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  return centrality;
}

}  // namespace egonet
