#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "egonet/error.hpp"
#include "egonet/network.hpp"
#include "egonet/random.hpp"

namespace egonet {

struct CorePeripheryResult {
  double fit = 0.0;
  std::vector<bool> core;  // per node
  std::size_t iterations = 0;
  bool degenerate = false;
};

/// Pearson correlation between the observed undirected adjacency and the
/// discrete core/periphery ideal (a pair is expected tied iff at least one
/// endpoint is core), over all unordered pairs. Only four counts matter:
/// node count, edge count, core count and the number of periphery-periphery
/// edges. Returns NaN when either side is constant.
inline double core_periphery_correlation(std::size_t n, std::size_t edges, std::size_t core,
                                         std::size_t periphery_edges) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double m = static_cast<double>(edges);
  const double p = static_cast<double>(n - core);
  const double ideal = pairs - p * (p - 1.0) / 2.0;
  const double both = m - static_cast<double>(periphery_edges);
  const double var_a = pairs * m - m * m;
  const double var_d = pairs * ideal - ideal * ideal;
  if (var_a <= 0.0 || var_d <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (pairs * both - m * ideal) / std::sqrt(var_a * var_d);
}

/// Fits the discrete core/periphery model by steepest-ascent single-node
/// flips from `restarts` random starting assignments. Deterministic per seed.
inline CorePeripheryResult core_periphery_fit(const SimpleGraph& g, std::size_t restarts,
                                              std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n < 3) throw Error(ErrorCode::TooFewNodes, "core/periphery needs at least 3 nodes");
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, "core/periphery needs at least 1 iteration");

  CorePeripheryResult best;
  best.iterations = restarts;
  best.core.assign(n, false);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (g.edge_count == 0 || static_cast<double>(g.edge_count) == pairs) {
    best.degenerate = true;
    return best;
  }

  auto score = [&](std::size_t core, std::size_t pp) {
    const double r = core_periphery_correlation(n, g.edge_count, core, pp);
    return std::isnan(r) ? -std::numeric_limits<double>::infinity() : r;
  };

  Rng rng(seed);
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<bool> core(n);
  std::vector<std::size_t> periphery_nbrs(n);
  for (std::size_t r = 0; r < restarts; ++r) {
    std::size_t core_count = 0;
    for (std::size_t v = 0; v < n; ++v) {
      core[v] = rng.bernoulli(0.5);
      core_count += core[v];
    }
    std::size_t pp = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      periphery_nbrs[v] = 0;
      for (auto w : g.adjacency[v]) periphery_nbrs[v] += !core[w];
      if (!core[v]) pp += periphery_nbrs[v];
    }
    pp /= 2;

    double current = score(core_count, pp);
    while (true) {
      double cand_best = current;
      std::size_t flip = n;
      for (std::size_t v = 0; v < n; ++v) {
        const double s = core[v] ? score(core_count - 1, pp + periphery_nbrs[v])
                                 : score(core_count + 1, pp - periphery_nbrs[v]);
        if (s > cand_best + 1e-12) {
          cand_best = s;
          flip = v;
        }
      }
      if (flip == n) break;
      if (core[flip]) {
        pp += periphery_nbrs[flip];
        --core_count;
        for (auto w : g.adjacency[flip]) ++periphery_nbrs[w];
      } else {
        pp -= periphery_nbrs[flip];
        ++core_count;
        for (auto w : g.adjacency[flip]) --periphery_nbrs[w];
      }
      core[flip] = !core[flip];
      current = cand_best;
    }
    if (current > best_score) {
      best_score = current;
      best.core = core;
    }
  }
  best.fit = best_score;
  return best;
}

}  // namespace egonet
