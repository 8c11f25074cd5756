#include <gtest/gtest.h>

#include <random>

#include "egonet/egonet.hpp"
#include "oracles.hpp"

using namespace egonet;
using oracle::make_net;

namespace {

PersonId P(const char* s) { return PersonId(s); }

CommunityNetwork grouped(const CommunityNetwork& net, const std::map<std::string, std::string>& group) {
  std::vector<Node> nodes(net.nodes().begin(), net.nodes().end());
  for (auto& n : nodes) n.attributes.gender = group.at(n.id.value);
  return CommunityNetwork::from_parts(nodes, net.ties());
}

}  // namespace

TEST(TwoStepReach, OutStar) {
  auto net = make_net({"e"}, {{"e", "a1"}, {"e", "a2"}, {"e", "a3"}, {"e", "a4"}, {"e", "a5"}});
  const auto r = two_step_reach(net, P("e"));
  EXPECT_EQ(r.count, 5u);
  ASSERT_TRUE(r.normalized.has_value());
  EXPECT_DOUBLE_EQ(*r.normalized, 1.0);
  EXPECT_DOUBLE_EQ(reach_efficiency(net, P("e")), 100.0);
}

TEST(TwoStepReach, AlterAndEgoChain) {
  auto net = make_net({"e", "e2", "e3"}, {{"e", "a"}, {"e", "e2"}, {"e2", "e3"}});
  EXPECT_EQ(two_step_reach(net, P("e")).count, 3u);
}

TEST(TwoStepReach, Errors) {
  auto net = make_net({"e", "f"}, {{"e", "a"}});
  EXPECT_THROW(two_step_reach(net, P("a")), Error);
  EXPECT_THROW(two_step_reach(net, P("nobody")), Error);
  try {
    reach_efficiency(net, P("f"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IsolatedEgo);
  }
  auto no_alters = make_net({"e", "f"}, {{"e", "f"}});
  EXPECT_FALSE(two_step_reach(no_alters, P("e")).normalized.has_value());
  EXPECT_EQ(two_step_reach(no_alters, P("e")).count, 1u);
}

TEST(ReachEfficiency, AboveHundred) {
  // two neighbours each reaching three others: (2 + 6) / 2
  auto net = make_net({"e", "n1", "n2"}, {{"e", "n1"},
                                          {"e", "n2"},
                                          {"n1", "a1"},
                                          {"n1", "a2"},
                                          {"n1", "a3"},
                                          {"n2", "a4"},
                                          {"n2", "a5"},
                                          {"n2", "a6"}});
  EXPECT_DOUBLE_EQ(reach_efficiency(net, P("e")), 400.0);
}

TEST(EgoBetweenness, ChainAndSymmetry) {
  auto chain = ego_betweenness_normalized(make_net({"e1", "e2", "e3"}, {{"e1", "e2"}, {"e2", "e3"}}));
  EXPECT_DOUBLE_EQ(chain.percent.at(P("e2")), 100.0);
  EXPECT_DOUBLE_EQ(chain.percent.at(P("e1")), 0.0);
  EXPECT_FALSE(chain.degenerate);
  auto sym = ego_betweenness_normalized(
      make_net({"e1", "e2", "e3", "e4"}, {{"e1", "e2"}, {"e2", "e4"}, {"e1", "e3"}, {"e3", "e4"}}));
  EXPECT_DOUBLE_EQ(sym.percent.at(P("e2")), 50.0);
  EXPECT_DOUBLE_EQ(sym.percent.at(P("e3")), 50.0);
  auto flat = ego_betweenness_normalized(make_net({"e1", "e2"}, {{"e1", "a"}, {"e2", "a"}}));
  EXPECT_TRUE(flat.degenerate);
  EXPECT_DOUBLE_EQ(flat.percent.at(P("e1")), 0.0);
}

TEST(EgoBetweenness, MatchesEnumerationAfterRescaling) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 60; ++i) {
    auto net = oracle::random_net(rng, {2 + rng() % 5, rng() % 4, 0.35});
    if (net.node_count() < 3) continue;
    const auto slow = oracle::betweenness(net);
    double total = 0;
    for (auto v : net.egos()) total += slow[v];
    for (auto v : net.alters()) EXPECT_EQ(slow[v], 0.0);
    const auto r = ego_betweenness_normalized(net);
    double sum = 0;
    for (auto v : net.egos()) {
      const double expect = total > 0 ? 100.0 * slow[v] / total : 0.0;
      EXPECT_NEAR(r.percent.at(net.id(v)), expect, 1e-9);
      sum += r.percent.at(net.id(v));
    }
    if (total > 0) {
      EXPECT_NEAR(sum, 100.0, 1e-9);
    }
  }
}

TEST(NeighborhoodDensity, Examples) {
  auto none = make_net({"e"}, {{"e", "a"}, {"e", "b"}, {"e", "c"}});
  EXPECT_DOUBLE_EQ(neighborhood_density(none, P("e")).value, 0.0);
  auto tri = make_net({"e", "a", "b", "c"}, {{"e", "a"}, {"e", "b"}, {"e", "c"}, {"a", "b"}, {"b", "c"}, {"c", "a"}});
  EXPECT_DOUBLE_EQ(neighborhood_density(tri, P("e")).value, 50.0);
  auto pair = make_net({"e", "a", "b"}, {{"e", "a"}, {"e", "b"}, {"a", "b"}, {"b", "a"}});
  EXPECT_DOUBLE_EQ(neighborhood_density(pair, P("e")).value, 100.0);
  auto lonely = make_net({"e"}, {{"e", "a"}});
  EXPECT_TRUE(neighborhood_density(lonely, P("e")).degenerate);
  EXPECT_DOUBLE_EQ(neighborhood_density(lonely, P("e")).value, 0.0);
}

TEST(NeighborhoodDensity, InvariantToUnrelatedNodes) {
  std::mt19937_64 rng(66);
  for (int i = 0; i < 20; ++i) {
    auto net = oracle::random_net(rng, {8, 6, 0.3});
    auto ties = net.ties();
    std::vector<Node> nodes(net.nodes().begin(), net.nodes().end());
    Node far{PersonId("zz_far"), {}};
    far.attributes.is_respondent = true;
    nodes.push_back(far);
    ties.push_back({PersonId("zz_far"), PersonId("zz_alter"), make_labels({"friend"}), 0});
    nodes.push_back(Node{PersonId("zz_alter"), {}});
    auto bigger = CommunityNetwork::from_parts(nodes, ties);
    for (auto v : net.egos()) {
      EXPECT_DOUBLE_EQ(neighborhood_density(net, net.id(v)).value, neighborhood_density(bigger, net.id(v)).value);
    }
  }
}

TEST(NeighborhoodAvgDistance, Examples) {
  auto clique = make_net({"e", "a", "b"}, {{"e", "a"}, {"e", "b"}, {"a", "b"}, {"b", "a"}});
  EXPECT_DOUBLE_EQ(neighborhood_avg_distance(clique, P("e")).value, 1.0);
  auto none = make_net({"e"}, {{"e", "a"}, {"e", "b"}});
  EXPECT_DOUBLE_EQ(neighborhood_avg_distance(none, P("e")).value, 0.0);
  // neighbourhood path a -> b -> c: 1 + 1 + 1/2 over 6 ordered pairs
  auto path = make_net({"e", "a", "b"}, {{"e", "a"}, {"e", "b"}, {"e", "c"}, {"a", "b"}, {"b", "c"}});
  EXPECT_NEAR(neighborhood_avg_distance(path, P("e")).value, 2.5 / 6.0, 1e-15);
}

TEST(Brokerage, Examples) {
  auto open = grouped(make_net({"s", "b"}, {{"s", "b"}, {"b", "t"}}), {{"s", "A"}, {"b", "A"}, {"t", "A"}});
  const Grouping by_gender{"gender", {}};
  auto p = brokerage_roles(open, by_gender);
  EXPECT_EQ(p.at(P("b")).coordinator, 1u);
  EXPECT_EQ(p.at(P("b")).total(), 1u);

  auto closed = grouped(make_net({"s", "b"}, {{"s", "b"}, {"b", "t"}, {"s", "t"}}), {{"s", "A"}, {"b", "A"}, {"t", "A"}});
  EXPECT_EQ(brokerage_roles(closed, by_gender).at(P("b")).total(), 0u);

  auto liaison = grouped(make_net({"s", "b"}, {{"s", "b"}, {"b", "t"}}), {{"s", "A"}, {"b", "B"}, {"t", "C"}});
  EXPECT_EQ(brokerage_roles(liaison, by_gender).at(P("b")).liaison, 1u);
}

TEST(Brokerage, RolePartition) {
  const std::vector<std::string> g{"A", "B", "C"};
  std::map<BrokerageRole, int> seen;
  for (const auto& s : g) {
    for (const auto& b : g) {
      for (const auto& t : g) {
        const auto role = classify_brokerage(s, b, t);
        ++seen[role];
        switch (role) {
          case BrokerageRole::Coordinator: EXPECT_TRUE(s == b && b == t); break;
          case BrokerageRole::Consultant: EXPECT_TRUE(s == t && s != b); break;
          case BrokerageRole::Gatekeeper: EXPECT_TRUE(s == b && b != t); break;
          case BrokerageRole::Representative: EXPECT_TRUE(b == t && s != b); break;
          case BrokerageRole::Liaison: EXPECT_TRUE(s != b && b != t && s != t); break;
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Brokerage, ProjectGrouping) {
  PersonAttributes a;
  Grouping g{"projects", {"radio", "garden"}};
  EXPECT_EQ(g.category(a), "none");
  a.projects = {"garden", "radio"};
  EXPECT_EQ(g.category(a), "radio");
  EXPECT_EQ(Grouping{}.category(a), "garden");
}

TEST(Brokerage, MatchesTripleEnumeration) {
  std::mt19937_64 rng(88);
  for (int i = 0; i < 20; ++i) {
    auto net = oracle::random_net(rng, {10 + rng() % 15, rng() % 10, 0.2, 0.0, {"F", "M"}, {"p1", "p2", "p3"}});
    const Grouping grouping{"projects", {}};
    const auto fast = brokerage_roles(net, grouping);
    const auto slow =
        oracle::brokerage(net, [&](NodeIndex v) { return grouping.category(net.attributes(v)); });
    for (const auto& [id, p] : fast) {
      const auto& o = slow.at(id);
      EXPECT_EQ(p.total(), o.open_two_paths);
      EXPECT_EQ(p.coordinator, o.roles[0]);
      EXPECT_EQ(p.consultant, o.roles[1]);
      EXPECT_EQ(p.gatekeeper, o.roles[2]);
      EXPECT_EQ(p.representative, o.roles[3]);
      EXPECT_EQ(p.liaison, o.roles[4]);
    }
    for (auto a : net.alters()) EXPECT_FALSE(fast.count(net.id(a)));
  }
}

TEST(EgoSummaries, CollectsAllMeasures) {
  auto net = make_net({"e1", "e2"}, {{"e1", "e2"}, {"e1", "a"}, {"e2", "a"}});
  const auto s = ego_summaries(net, {P("e1"), P("e2")});
  EXPECT_EQ(s.at(P("e1")).two_step_reach.count, 2u);
  ASSERT_TRUE(s.at(P("e1")).reach_efficiency.has_value());
  EXPECT_DOUBLE_EQ(*s.at(P("e1")).reach_efficiency, 100.0);
  EXPECT_DOUBLE_EQ(s.at(P("e1")).neighborhood_density.value, 50.0);
}
