#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "egonet/error.hpp"
#include "egonet/types.hpp"

namespace egonet {

using NodeIndex = std::uint32_t;

struct Node {
  PersonId id;
  PersonAttributes attributes;

  bool operator==(const Node&) const = default;
};

/// A tie as supplied by a caller, addressed by person id. `line` is the
/// originating input row when known (0 otherwise) and only feeds diagnostics.
struct Tie {
  PersonId source;
  PersonId target;
  TieLabelSet labels;
  std::size_t line = 0;
};

struct Edge {
  NodeIndex source = 0;
  NodeIndex target = 0;
  TieLabelSet labels;

  bool operator==(const Edge&) const = default;
};

/// How a tie carrying both from_project and pre_existing is treated.
enum class ConflictPolicy {
  Reject,           ///< contradictory, raise LabelConflict
  KeepPreExisting,  ///< drop from_project; the tie survives counterfactuals
};

/// Directed ego/alter network with labelled ties.
///
/// Nodes are stored in ascending PersonId order; a node is an ego iff its
/// attributes mark it as a respondent. Alters never have outgoing edges,
/// there are no self-loops and at most one edge per ordered pair. Instances
/// are immutable once built and every derived view is a new value.
class CommunityNetwork {
 public:
  CommunityNetwork() = default;

  /// Validating constructor used by every builder and importer. Duplicate
  /// (source, target) ties are merged by label union before validation.
  static CommunityNetwork from_parts(std::vector<Node> nodes,
                                     const std::vector<Tie>& ties,
                                     ConflictPolicy conflict = ConflictPolicy::Reject) {
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (nodes[i].id == nodes[i - 1].id) {
        throw Error(ErrorCode::DuplicateRespondentId,
                    "duplicate person id '" + nodes[i].id.value + "'");
      }
    }
    CommunityNetwork net;
    net.nodes_ = std::move(nodes);

    std::map<std::pair<NodeIndex, NodeIndex>, TieLabelSet> merged;
    std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> first_line;
    for (const auto& tie : ties) {
      const auto s = net.find(tie.source);
      const auto t = net.find(tie.target);
      if (!s || !t) {
        throw Error(ErrorCode::InvalidNetwork,
                    "tie " + tie.source.value + " -> " + tie.target.value +
                        " references an unknown node" + line_suffix(tie.line));
      }
      if (*s == *t) {
        throw Error(ErrorCode::SelfLoop,
                    "self-loop on '" + tie.source.value + "'" + line_suffix(tie.line));
      }
      if (tie.labels.empty()) {
        throw Error(ErrorCode::EmptyLabelSet,
                    "tie " + tie.source.value + " -> " + tie.target.value +
                        " has no labels" + line_suffix(tie.line));
      }
      if (!net.is_ego(*s)) {
        throw Error(ErrorCode::UnknownSource,
                    "tie source '" + tie.source.value + "' is not a respondent" +
                        line_suffix(tie.line));
      }
      merged[{*s, *t}] |= tie.labels;
      first_line.try_emplace({*s, *t}, tie.line);
    }

    net.edges_.reserve(merged.size());
    for (auto& [key, labels] : merged) {
      if (labels.conflicting()) {
        if (conflict == ConflictPolicy::Reject) {
          throw Error(ErrorCode::LabelConflict,
                      "tie " + net.id(key.first).value + " -> " +
                          net.id(key.second).value +
                          " is both from_project and pre_existing" +
                          line_suffix(first_line[key]));
        }
        labels.from_project = false;
      }
      net.edges_.push_back({key.first, key.second, labels});
    }
    net.index_adjacency();
    return net;
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  const PersonId& id(NodeIndex v) const { return nodes_[v].id; }
  const PersonAttributes& attributes(NodeIndex v) const { return nodes_[v].attributes; }
  bool is_ego(NodeIndex v) const { return nodes_[v].attributes.is_respondent; }

  std::optional<NodeIndex> find(const PersonId& pid) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), pid,
                               [](const Node& n, const PersonId& p) { return n.id < p; });
    if (it == nodes_.end() || it->id != pid) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
  }

  /// Out-neighbours of v in ascending index order.
  std::span<const NodeIndex> successors(NodeIndex v) const {
    return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  /// In-neighbours of v in ascending index order.
  std::span<const NodeIndex> predecessors(NodeIndex v) const {
    return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }
  std::size_t out_degree(NodeIndex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeIndex v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  bool has_edge(NodeIndex u, NodeIndex v) const {
    auto s = successors(u);
    return std::binary_search(s.begin(), s.end(), v);
  }
  const TieLabelSet* labels(NodeIndex u, NodeIndex v) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const Edge& e, const std::pair<NodeIndex, NodeIndex>& k) {
                                 return std::pair{e.source, e.target} < k;
                               });
    if (it == edges_.end() || it->source != u || it->target != v) return nullptr;
    return &it->labels;
  }

  /// Union of in- and out-neighbours, ascending.
  std::vector<NodeIndex> neighbors(NodeIndex v) const {
    std::vector<NodeIndex> out;
    auto s = successors(v);
    auto p = predecessors(v);
    std::set_union(s.begin(), s.end(), p.begin(), p.end(), std::back_inserter(out));
    return out;
  }

  std::vector<NodeIndex> egos() const { return select(true); }
  std::vector<NodeIndex> alters() const { return select(false); }
  std::size_t ego_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.attributes.is_respondent; }));
  }
  std::size_t alter_count() const { return node_count() - ego_count(); }

  /// Ties addressed by id, suitable for from_parts.
  std::vector<Tie> ties() const {
    std::vector<Tie> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back({id(e.source), id(e.target), e.labels, 0});
    return out;
  }

  /// Subnetwork induced on the nodes with keep[v] true, edges filtered by
  /// `keep_edge`. Indices are remapped; ids are preserved.
  template <class EdgePredicate>
  CommunityNetwork induced(const std::vector<bool>& keep, EdgePredicate keep_edge) const {
    CommunityNetwork net;
    std::vector<NodeIndex> remap(nodes_.size(), 0);
    for (NodeIndex v = 0; v < nodes_.size(); ++v) {
      if (!keep[v]) continue;
      remap[v] = static_cast<NodeIndex>(net.nodes_.size());
      net.nodes_.push_back(nodes_[v]);
    }
    for (const auto& e : edges_) {
      if (keep[e.source] && keep[e.target] && keep_edge(e)) {
        net.edges_.push_back({remap[e.source], remap[e.target], e.labels});
      }
    }
    net.index_adjacency();
    return net;
  }

  bool operator==(const CommunityNetwork& o) const {
    return nodes_ == o.nodes_ && edges_ == o.edges_;
  }

 private:
  static std::string line_suffix(std::size_t line) {
    return line ? " (row " + std::to_string(line) + ")" : std::string();
  }

  std::vector<NodeIndex> select(bool ego) const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < nodes_.size(); ++v) {
      if (is_ego(v) == ego) out.push_back(v);
    }
    return out;
  }

  // edges_ must already be sorted by (source, target).
  void index_adjacency() {
    const std::size_t n = nodes_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      ++out_offsets_[e.source + 1];
      ++in_offsets_[e.target + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
      out_offsets_[v + 1] += out_offsets_[v];
      in_offsets_[v + 1] += in_offsets_[v];
    }
    out_targets_.resize(edges_.size());
    in_sources_.resize(edges_.size());
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_targets_[i] = edges_[i].target;
      in_sources_[in_fill[edges_[i].target]++] = edges_[i].source;
    }
  }

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeIndex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeIndex> in_sources_;
};

/// Respondent record for build_network.
struct Respondent {
  PersonId id;
  PersonAttributes attributes;
};

/// Assembles a network from respondents and their ties. Respondents become
/// egos; every tie target that is not a respondent becomes an alter with
/// empty attributes.
inline CommunityNetwork build_network(const std::vector<Respondent>& respondents,
                                      const std::vector<Tie>& ties,
                                      ConflictPolicy conflict = ConflictPolicy::Reject) {
  std::map<PersonId, const Respondent*> by_id;
  for (const auto& r : respondents) {
    if (!by_id.emplace(r.id, &r).second) {
      throw Error(ErrorCode::DuplicateRespondentId, "respondent '" + r.id.value + "' listed twice");
    }
  }
  std::map<PersonId, Node> nodes;
  for (const auto& r : respondents) {
    Node n{r.id, r.attributes};
    n.attributes.is_respondent = true;
    nodes.emplace(r.id, std::move(n));
  }
  for (const auto& t : ties) {
    if (!by_id.count(t.source)) {
      throw Error(ErrorCode::UnknownSource,
                  "tie source '" + t.source.value + "' is not a respondent" +
                      (t.line ? " (row " + std::to_string(t.line) + ")" : ""));
    }
    if (!nodes.count(t.target)) nodes.emplace(t.target, Node{t.target, {}});
  }
  std::vector<Node> flat;
  flat.reserve(nodes.size());
  for (auto& [_, n] : nodes) flat.push_back(std::move(n));
  return CommunityNetwork::from_parts(std::move(flat), ties, conflict);
}

/// Subgraph induced on the egos.
inline CommunityNetwork whole_view(const CommunityNetwork& net) {
  std::vector<bool> keep(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) keep[v] = net.is_ego(v);
  return net.induced(keep, [](const Edge&) { return true; });
}

/// Which ties a counterfactual view removes: any edge carrying at least one
/// of the flagged labels. The default removes project-induced ties.
struct CounterfactualPolicy {
  TieLabelSet remove_if_any = make_labels({"from_project"});
};

/// Same node set, edges matching the policy removed. Isolates are kept.
inline CommunityNetwork counterfactual_view(const CommunityNetwork& net,
                                            const CounterfactualPolicy& policy = {}) {
  std::vector<bool> keep(net.node_count(), true);
  return net.induced(keep, [&](const Edge& e) { return !e.labels.intersects(policy.remove_if_any); });
}

/// Weakly connected components. Returns a component label per node; labels
/// are numbered in order of each component's smallest node index.
inline std::vector<std::size_t> weak_components(const CommunityNetwork& net,
                                                std::size_t* count = nullptr) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(net.node_count(), kUnset);
  std::size_t next = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex root = 0; root < net.node_count(); ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeIndex v = stack.back();
      stack.pop_back();
      for (auto w : net.successors(v)) {
        if (label[w] == kUnset) { label[w] = next; stack.push_back(w); }
      }
      for (auto w : net.predecessors(v)) {
        if (label[w] == kUnset) { label[w] = next; stack.push_back(w); }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

struct PrunePolicy {
  enum class Kind { None, KeepLargest, MinSize };
  Kind kind = Kind::KeepLargest;
  std::size_t min_size = 1;

  static PrunePolicy none() { return {Kind::None, 1}; }
  static PrunePolicy keep_largest() { return {Kind::KeepLargest, 1}; }
  static PrunePolicy at_least(std::size_t k) { return {Kind::MinSize, k}; }
};

struct RemovedComponent {
  std::size_t size = 0;
  std::vector<PersonId> node_ids;
};

struct PruneReport {
  std::vector<RemovedComponent> removed_components;
  std::size_t removed_node_count = 0;
  std::size_t removed_edge_count = 0;
};

inline std::pair<CommunityNetwork, PruneReport> prune_components(const CommunityNetwork& net,
                                                                 const PrunePolicy& policy) {
  std::size_t count = 0;
  const auto label = weak_components(net, &count);
  std::vector<std::size_t> size(count, 0);
  for (auto l : label) ++size[l];

  std::vector<bool> keep_component(count, true);
  if (policy.kind == PrunePolicy::Kind::KeepLargest && count > 0) {
    // Labels follow smallest contained id, so the first maximum wins ties.
    const auto largest = static_cast<std::size_t>(
        std::max_element(size.begin(), size.end()) - size.begin());
    for (std::size_t c = 0; c < count; ++c) keep_component[c] = c == largest;
  } else if (policy.kind == PrunePolicy::Kind::MinSize) {
    for (std::size_t c = 0; c < count; ++c) keep_component[c] = size[c] >= policy.min_size;
  }

  PruneReport report;
  std::vector<bool> keep(net.node_count());
  std::vector<RemovedComponent> removed(count);
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    keep[v] = keep_component[label[v]];
    if (!keep[v]) removed[label[v]].node_ids.push_back(net.id(v));
  }
  for (std::size_t c = 0; c < count; ++c) {
    if (keep_component[c]) continue;
    removed[c].size = removed[c].node_ids.size();
    report.removed_node_count += removed[c].size;
    report.removed_components.push_back(std::move(removed[c]));
  }
  if (net.node_count() > 0 && report.removed_node_count == net.node_count()) {
    throw Error(ErrorCode::EmptyResult, "prune policy removes every node");
  }
  auto out = net.induced(keep, [](const Edge&) { return true; });
  report.removed_edge_count = net.edge_count() - out.edge_count();
  return {std::move(out), std::move(report)};
}

/// Simple undirected graph over node indices of a CommunityNetwork.
struct SimpleGraph {
  std::vector<std::vector<NodeIndex>> adjacency;  // sorted, no duplicates
  std::size_t edge_count = 0;

  std::size_t node_count() const { return adjacency.size(); }
  std::size_t degree(NodeIndex v) const { return adjacency[v].size(); }
  bool has_edge(NodeIndex u, NodeIndex v) const {
    return std::binary_search(adjacency[u].begin(), adjacency[u].end(), v);
  }
};

/// {u,v} is an edge iff u->v or v->u.
inline SimpleGraph undirected_projection(const CommunityNetwork& net) {
  SimpleGraph g;
  g.adjacency.resize(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) g.adjacency[v] = net.neighbors(v);
  for (const auto& adj : g.adjacency) g.edge_count += adj.size();
  g.edge_count /= 2;
  return g;
}

}  // namespace egonet
