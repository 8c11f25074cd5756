#include <gtest/gtest.h>

#include <random>

#include "egonet/egonet.hpp"
#include "oracles.hpp"

using namespace egonet;
using oracle::make_net;

namespace {

Respondent ego(const std::string& id) {
  Respondent r{PersonId(id), {}};
  r.attributes.is_respondent = true;
  return r;
}

Tie tie(const std::string& s, const std::string& t, std::initializer_list<std::string_view> labels) {
  return {PersonId(s), PersonId(t), make_labels(labels), 0};
}

void expect_partition_invariant(const CommunityNetwork& net) {
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (!net.is_ego(v)) {
      EXPECT_EQ(net.out_degree(v), 0u) << net.id(v).value;
    }
  }
  EXPECT_EQ(net.ego_count() + net.alter_count(), net.node_count());
}

}  // namespace

TEST(BuildNetwork, EgosAltersAndEdges) {
  auto net = build_network({ego("e1"), ego("e2")}, {tie("e1", "e2", {"friend"}), tie("e1", "a", {"family"})});
  EXPECT_EQ(net.node_count(), 3u);
  EXPECT_EQ(net.edge_count(), 2u);
  EXPECT_EQ(net.ego_count(), 2u);
  ASSERT_EQ(net.alters().size(), 1u);
  EXPECT_EQ(net.id(net.alters()[0]).value, "a");
  expect_partition_invariant(net);
}

TEST(BuildNetwork, DuplicateMentionsMergeLabels) {
  auto net = build_network({ego("e1"), ego("e2")}, {tie("e1", "e2", {"friend"}), tie("e1", "e2", {"coworker"})});
  ASSERT_EQ(net.edge_count(), 1u);
  EXPECT_EQ(net.edges()[0].labels, make_labels({"friend", "coworker"}));
}

TEST(BuildNetwork, Errors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidNetwork;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code([] { build_network({ego("e1")}, {tie("e1", "e1", {"friend"})}); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code([] { build_network({ego("e1")}, {Tie{PersonId("e1"), PersonId("a"), {}, 0}}); }),
            ErrorCode::EmptyLabelSet);
  EXPECT_EQ(code([] { build_network({ego("e1"), ego("e1")}, {}); }), ErrorCode::DuplicateRespondentId);
  EXPECT_EQ(code([] { build_network({ego("e1")}, {tie("x", "e1", {"friend"})}); }), ErrorCode::UnknownSource);
  EXPECT_EQ(code([] { build_network({ego("e1")}, {tie("e1", "a", {"from_project", "pre_existing"})}); }),
            ErrorCode::LabelConflict);
}

TEST(BuildNetwork, KeepPreExistingDropsProjectFlag) {
  auto net = build_network({ego("e1")}, {tie("e1", "a", {"friend", "from_project", "pre_existing"})},
                           ConflictPolicy::KeepPreExisting);
  ASSERT_EQ(net.edge_count(), 1u);
  EXPECT_FALSE(net.edges()[0].labels.from_project);
  EXPECT_EQ(counterfactual_view(net).edge_count(), 1u);
}

TEST(BuildNetwork, AlterCannotBeSource) {
  std::vector<Node> nodes{{PersonId("a"), {}}, {PersonId("e"), {}}};
  nodes[1].attributes.is_respondent = true;
  EXPECT_THROW(CommunityNetwork::from_parts(nodes, {tie("a", "e", {"friend"})}), Error);
}

TEST(WholeView, KeepsEgoEdgesOnly) {
  auto net = make_net({"e1", "e2"}, {{"e1", "e2"}, {"e1", "a"}});
  auto w = whole_view(net);
  EXPECT_EQ(w.node_count(), 2u);
  EXPECT_EQ(w.edge_count(), 1u);
  EXPECT_EQ(w.alter_count(), 0u);
  EXPECT_EQ(whole_view(w), w);
}

TEST(WholeView, NoEgoEdges) {
  auto w = whole_view(make_net({"e1", "e2", "e3"}, {{"e1", "a"}, {"e2", "a"}}));
  EXPECT_EQ(w.node_count(), 3u);
  EXPECT_EQ(w.edge_count(), 0u);
}

TEST(Counterfactual, RemovesProjectTies) {
  auto net = build_network({ego("e1"), ego("e2"), ego("e3")},
                           {tie("e1", "e2", {"friend", "from_project"}), tie("e2", "e3", {"friend"})});
  auto cf = counterfactual_view(net);
  EXPECT_EQ(cf.node_count(), 3u);
  ASSERT_EQ(cf.edge_count(), 1u);
  EXPECT_EQ(cf.id(cf.edges()[0].source).value, "e2");
  EXPECT_EQ(counterfactual_view(cf), cf);
}

TEST(Counterfactual, IdentityWithoutProjectTies) {
  auto net = make_net({"e1", "e2"}, {{"e1", "e2"}, {"e2", "a"}});
  EXPECT_EQ(counterfactual_view(net), net);
}

TEST(Counterfactual, RandomProperties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto net = oracle::random_net(rng, {10, 10, 0.3, 0.3});
    auto cf = counterfactual_view(net);
    expect_partition_invariant(cf);
    EXPECT_EQ(cf.nodes().size(), net.nodes().size());
    for (const auto& e : cf.edges()) {
      EXPECT_FALSE(e.labels.from_project);
      const auto s = net.find(cf.id(e.source));
      const auto t = net.find(cf.id(e.target));
      ASSERT_TRUE(s && t);
      ASSERT_NE(net.labels(*s, *t), nullptr);
      EXPECT_EQ(*net.labels(*s, *t), e.labels);
    }
    EXPECT_EQ(counterfactual_view(cf), cf);
    EXPECT_EQ(whole_view(whole_view(net)), whole_view(net));
  }
}

TEST(Prune, KeepLargest) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i < 10; ++i) edges.emplace_back("b" + std::to_string(i), "b" + std::to_string(i + 1));
  edges.emplace_back("c1", "c2");
  edges.emplace_back("c2", "c3");
  std::vector<std::string> egos{"c1", "c2"};
  for (int i = 1; i <= 9; ++i) egos.push_back("b" + std::to_string(i));
  auto net = make_net(egos, edges);
  auto [kept, report] = prune_components(net, PrunePolicy::keep_largest());
  EXPECT_EQ(kept.node_count(), 10u);
  ASSERT_EQ(report.removed_components.size(), 1u);
  EXPECT_EQ(report.removed_components[0].size, 3u);
  EXPECT_EQ(report.removed_node_count, 3u);
  EXPECT_EQ(report.removed_edge_count, 2u);
}

TEST(Prune, TieBreakBySmallestId) {
  auto net = make_net({"x", "b"}, {{"x", "y"}, {"b", "c"}});
  auto [kept, report] = prune_components(net, PrunePolicy::keep_largest());
  EXPECT_TRUE(kept.find(PersonId("b")).has_value());
  EXPECT_FALSE(kept.find(PersonId("x")).has_value());
}

TEST(Prune, MinSizeOneIsIdentity) {
  auto net = make_net({"x", "b", "z"}, {{"x", "y"}, {"b", "c"}});
  auto [kept, report] = prune_components(net, PrunePolicy::at_least(1));
  EXPECT_EQ(kept, net);
  EXPECT_TRUE(report.removed_components.empty());
}

TEST(Prune, EmptyResult) {
  auto net = make_net({"x", "b"}, {{"x", "y"}});
  try {
    prune_components(net, PrunePolicy::at_least(5));
    FAIL() << "expected EmptyResult";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyResult);
  }
}

TEST(Prune, CountsConserved) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto net = oracle::random_net(rng, {12, 12, 0.08, 0.0});
    auto [kept, report] = prune_components(net, PrunePolicy::keep_largest());
    EXPECT_EQ(kept.node_count() + report.removed_node_count, net.node_count());
    EXPECT_EQ(kept.edge_count() + report.removed_edge_count, net.edge_count());
    std::size_t listed = 0;
    for (const auto& c : report.removed_components) listed += c.node_ids.size();
    EXPECT_EQ(listed, report.removed_node_count);
  }
}

TEST(Projection, Basics) {
  auto g = undirected_projection(oracle::make_digraph(2, {{0, 1}, {1, 0}}));
  EXPECT_EQ(g.edge_count, 1u);
  EXPECT_EQ(undirected_projection(oracle::make_digraph(3, {})).edge_count, 0u);
  auto tri = undirected_projection(oracle::make_digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ(tri.edge_count, 3u);
  EXPECT_TRUE(tri.has_edge(0, 2) && tri.has_edge(2, 0));
}

TEST(Network, Deterministic) {
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(oracle::random_net(a, {}), oracle::random_net(b, {}));
}
