#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string_view>
#include <vector>

#include "egonet/error.hpp"
#include "egonet/network.hpp"

// Alter-mediated ego linkage (2-ELDA).
//
// Every unordered ego pair falls in exactly one class, by precedence:
//   Direct         an edge between the two egos, either direction
//   EgoMediated    a third ego adjacent (either direction) to both
//   AlterMediated  an alter both egos point to
//   Disconnected   none of the above
// The aggregate ratio is the share of AlterMediated pairs among all C(n_e, 2)
// pairs; R(a) counts the AlterMediated pairs that alter a mediates.

namespace egonet {

enum class PairKind { Direct, EgoMediated, AlterMediated, Disconnected };

inline std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::Direct: return "direct";
    case PairKind::EgoMediated: return "ego_mediated";
    case PairKind::AlterMediated: return "alter_mediated";
    case PairKind::Disconnected: return "disconnected";
  }
  return "unknown";
}

struct PairClass {
  PersonId first;   // smaller id
  PersonId second;  // larger id
  PairKind kind = PairKind::Disconnected;
  std::vector<PersonId> mediators;  // nonempty iff kind == AlterMediated

  bool operator==(const PairClass&) const = default;
};

struct EldaSummary {
  std::size_t ego_count = 0;
  std::size_t total_pairs = 0;
  std::size_t direct = 0;
  std::size_t ego_mediated = 0;
  std::size_t alter_mediated_distinct = 0;
  std::size_t alter_mediated_triplets = 0;
  std::size_t disconnected = 0;
  double elda_ratio = 0.0;     // alter_mediated_distinct / total_pairs
  double triplet_ratio = 0.0;  // alter_mediated_triplets / total_pairs
  std::size_t involved_alters = 0;

  bool operator==(const EldaSummary&) const = default;
};

struct AlterScore {
  PersonId alter;
  std::size_t mediated_pairs = 0;  // R(a)

  bool operator==(const AlterScore&) const = default;
};

/// Alters by R(a) descending, ties by id ascending.
struct AlterRanking {
  std::vector<AlterScore> entries;
};

/// Precomputed adjacency for pair classification: per ego, a bitset of
/// adjacent egos and the sorted list of alters it points to.
class EldaIndex {
 public:
  explicit EldaIndex(const CommunityNetwork& net) : net_(&net), egos_(net.egos()) {
    const std::size_t n = egos_.size();
    words_ = (n + 63) / 64;
    position_.assign(net.node_count(), kNone);
    for (std::size_t i = 0; i < n; ++i) position_[egos_[i]] = i;
    ego_adj_.assign(n * words_, 0);
    out_alters_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto w : net.successors(egos_[i])) {
        if (net.is_ego(w)) {
          set_bit(i, position_[w]);
          set_bit(position_[w], i);
        } else {
          out_alters_[i].push_back(w);
        }
      }
    }
  }

  std::size_t ego_count() const { return egos_.size(); }
  NodeIndex ego(std::size_t i) const { return egos_[i]; }
  std::size_t position(const PersonId& id) const {
    auto v = net_->find(id);
    if (!v || !net_->is_ego(*v)) throw Error(ErrorCode::NotAnEgo, "'" + id.value + "' is not an ego");
    return position_[*v];
  }

  /// Classifies ego pair (i, j) by position; `mediators` receives the alter
  /// node indices when the pair is alter-mediated.
  PairKind classify(std::size_t i, std::size_t j, std::vector<NodeIndex>* mediators = nullptr) const {
    if (mediators) mediators->clear();
    if (bit(i, j)) return PairKind::Direct;
    const std::uint64_t* a = &ego_adj_[i * words_];
    const std::uint64_t* b = &ego_adj_[j * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      if (a[w] & b[w]) return PairKind::EgoMediated;
    }
    const auto& x = out_alters_[i];
    const auto& y = out_alters_[j];
    bool found = false;
    for (std::size_t p = 0, q = 0; p < x.size() && q < y.size();) {
      if (x[p] < y[q]) {
        ++p;
      } else if (y[q] < x[p]) {
        ++q;
      } else {
        found = true;
        if (!mediators) break;
        mediators->push_back(x[p]);
        ++p;
        ++q;
      }
    }
    return found ? PairKind::AlterMediated : PairKind::Disconnected;
  }

  /// Visits every unordered pair (i < j) in position order.
  template <class Visitor>
  void for_each_pair(Visitor&& visit) const {
    std::vector<NodeIndex> mediators;
    for (std::size_t i = 0; i < egos_.size(); ++i) {
      for (std::size_t j = i + 1; j < egos_.size(); ++j) {
        const PairKind k = classify(i, j, &mediators);
        visit(i, j, k, mediators);
      }
    }
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void set_bit(std::size_t row, std::size_t col) {
    ego_adj_[row * words_ + col / 64] |= std::uint64_t{1} << (col % 64);
  }
  bool bit(std::size_t row, std::size_t col) const {
    return (ego_adj_[row * words_ + col / 64] >> (col % 64)) & 1U;
  }

  const CommunityNetwork* net_;
  std::vector<NodeIndex> egos_;
  std::vector<std::size_t> position_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> ego_adj_;
  std::vector<std::vector<NodeIndex>> out_alters_;
};

inline PairClass classify_pair(const CommunityNetwork& net, const PersonId& e1, const PersonId& e2) {
  const EldaIndex index(net);
  const std::size_t i = index.position(e1);
  const std::size_t j = index.position(e2);
  if (i == j) throw Error(ErrorCode::SamePair, "pair needs two distinct egos");
  std::vector<NodeIndex> mediators;
  PairClass out;
  out.kind = index.classify(std::min(i, j), std::max(i, j), &mediators);
  out.first = std::min(e1, e2);
  out.second = std::max(e1, e2);
  for (auto a : mediators) out.mediators.push_back(net.id(a));
  return out;
}

/// All pair classes in canonical (first, second) order.
inline std::vector<PairClass> classify_all_pairs(const CommunityNetwork& net) {
  const EldaIndex index(net);
  std::vector<PairClass> out;
  out.reserve(index.ego_count() * (index.ego_count() - (index.ego_count() > 0)) / 2);
  index.for_each_pair([&](std::size_t i, std::size_t j, PairKind k, const std::vector<NodeIndex>& m) {
    PairClass p{net.id(index.ego(i)), net.id(index.ego(j)), k, {}};
    for (auto a : m) p.mediators.push_back(net.id(a));
    out.push_back(std::move(p));
  });
  return out;
}

struct EldaResult {
  EldaSummary summary;
  std::vector<std::size_t> mediated;  // R(a) per node index; 0 for egos
};

inline EldaResult elda_analyze(const CommunityNetwork& net) {
  const EldaIndex index(net);
  if (index.ego_count() < 2) throw Error(ErrorCode::TooFewEgos, "2-ELDA needs at least 2 egos");
  EldaResult r;
  r.mediated.assign(net.node_count(), 0);
  auto& s = r.summary;
  s.ego_count = index.ego_count();
  s.total_pairs = s.ego_count * (s.ego_count - 1) / 2;
  index.for_each_pair([&](std::size_t, std::size_t, PairKind k, const std::vector<NodeIndex>& m) {
    switch (k) {
      case PairKind::Direct: ++s.direct; break;
      case PairKind::EgoMediated: ++s.ego_mediated; break;
      case PairKind::Disconnected: ++s.disconnected; break;
      case PairKind::AlterMediated:
        ++s.alter_mediated_distinct;
        s.alter_mediated_triplets += m.size();
        for (auto a : m) ++r.mediated[a];
        break;
    }
  });
  s.elda_ratio = static_cast<double>(s.alter_mediated_distinct) / static_cast<double>(s.total_pairs);
  s.triplet_ratio = static_cast<double>(s.alter_mediated_triplets) / static_cast<double>(s.total_pairs);
  s.involved_alters = static_cast<std::size_t>(
      std::count_if(r.mediated.begin(), r.mediated.end(), [](std::size_t x) { return x > 0; }));
  return r;
}

inline EldaSummary elda_summary(const CommunityNetwork& net) { return elda_analyze(net).summary; }

inline AlterRanking make_ranking(const CommunityNetwork& net, const std::vector<std::size_t>& mediated,
                                 std::size_t top_k) {
  AlterRanking ranking;
  for (auto a : net.alters()) ranking.entries.push_back({net.id(a), mediated[a]});
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const AlterScore& x, const AlterScore& y) {
                     return x.mediated_pairs > y.mediated_pairs;
                   });
  if (ranking.entries.size() > top_k) ranking.entries.resize(top_k);
  return ranking;
}

/// R(a) for every alter, truncated to `top_k` entries.
inline AlterRanking alter_ranking(const CommunityNetwork& net,
                                  std::size_t top_k = std::numeric_limits<std::size_t>::max()) {
  return make_ranking(net, elda_analyze(net).mediated, top_k);
}

struct RankingDelta {
  PersonId alter;
  std::size_t observed = 0;
  std::size_t counterfactual = 0;
  long long delta() const {
    return static_cast<long long>(counterfactual) - static_cast<long long>(observed);
  }
};

struct PairChange {
  PersonId first;
  PersonId second;
  PairKind observed;
  PairKind counterfactual;
};

struct EldaComparison {
  EldaSummary observed;
  EldaSummary counterfactual;
  std::vector<RankingDelta> ranking_deltas;  // every alter of either view, id order
  std::vector<PairChange> changed_pairs;
};

inline EldaComparison elda_compare(const CommunityNetwork& observed, const CommunityNetwork& counterfactual) {
  const auto eo = observed.egos();
  const auto ec = counterfactual.egos();
  const bool same = eo.size() == ec.size() &&
                    std::equal(eo.begin(), eo.end(), ec.begin(), [&](NodeIndex a, NodeIndex b) {
                      return observed.id(a) == counterfactual.id(b);
                    });
  if (!same) throw Error(ErrorCode::EgoSetMismatch, "networks do not share the same egos");

  EldaComparison out;
  const auto ro = elda_analyze(observed);
  const auto rc = elda_analyze(counterfactual);
  out.observed = ro.summary;
  out.counterfactual = rc.summary;

  std::map<PersonId, RankingDelta> deltas;
  for (auto a : observed.alters()) {
    auto& d = deltas[observed.id(a)];
    d.alter = observed.id(a);
    d.observed = ro.mediated[a];
  }
  for (auto a : counterfactual.alters()) {
    auto& d = deltas[counterfactual.id(a)];
    d.alter = counterfactual.id(a);
    d.counterfactual = rc.mediated[a];
  }
  for (auto& [_, d] : deltas) out.ranking_deltas.push_back(d);

  // Egos sort identically in both views, so pair positions line up.
  const EldaIndex io(observed);
  const EldaIndex ic(counterfactual);
  for (std::size_t i = 0; i < io.ego_count(); ++i) {
    for (std::size_t j = i + 1; j < io.ego_count(); ++j) {
      const auto before = io.classify(i, j);
      const auto after = ic.classify(i, j);
      if (before != after) {
        out.changed_pairs.push_back(
            {observed.id(io.ego(i)), observed.id(io.ego(j)), before, after});
      }
    }
  }
  return out;
}

}  // namespace egonet
