#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egonet/egonet.hpp"

using namespace egonet;

namespace {

SynthConfig quiet() {
  SynthConfig c;
  c.cluster_sizes = {6, 6, 6};
  c.p_intra = 0.5;
  c.p_inter = 0.0;
  c.project_tie_rate = 0.0;
  c.alter_mention_rate = 0.0;
  c.facilitator_count = 1;
  c.facilitator_mention_rate = 1.0;
  return c;
}

std::size_t cluster_of(const CommunityNetwork& net, NodeIndex v) {
  for (const auto& t : net.attributes(v).role_tags) {
    if (t.rfind("cluster=", 0) == 0) return std::stoul(t.substr(8));
  }
  return SIZE_MAX;
}

}  // namespace

TEST(Rng, EngineSequenceIsStandard) {
  // the standard fixes the 10000th output of a default-seeded mt19937_64
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, Helpers) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(7), 7u);
  }
  std::vector<int> v(20);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  rng.shuffle(w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}

TEST(Synth, DeterministicPerSeed) {
  SynthConfig c;
  EXPECT_EQ(generate(c), generate(c));
  SynthConfig d = c;
  d.seed = 2;
  EXPECT_FALSE(generate(c) == generate(d));
}

TEST(Synth, PartitionInvariantAndNaming) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig c;
    c.seed = seed;
    const auto net = generate(c);
    EXPECT_EQ(net.ego_count(), 60u);
    EXPECT_LE(net.alter_count(), alter_budget(c));
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      if (!net.is_ego(v)) {
        EXPECT_EQ(net.out_degree(v), 0u);
        EXPECT_GT(net.in_degree(v), 0u);  // unmentioned alters are omitted
      }
    }
    for (const auto& e : net.edges()) {
      EXPECT_FALSE(e.labels.conflicting());
      if (e.labels.from_project) {
        EXPECT_NE(cluster_of(net, e.source), cluster_of(net, e.target));
        EXPECT_TRUE(net.attributes(e.source).projects.count("joint"));
      }
    }
  }
}

TEST(Synth, NoProjectTiesMeansCounterfactualIsIdentity) {
  SynthConfig c;
  c.project_tie_rate = 0.0;
  const auto net = generate(c);
  EXPECT_EQ(counterfactual_view(net), net);
}

TEST(Synth, ClustersStaySeparateWithoutBridges) {
  const auto c = quiet();
  const auto whole = whole_view(generate(c));
  for (const auto& e : whole.edges()) EXPECT_EQ(cluster_of(whole, e.source), cluster_of(whole, e.target));
}

TEST(Synth, LoneFacilitatorMediatesEveryCrossClusterPair) {
  const auto c = quiet();
  const auto net = generate(c);
  const auto r = elda_analyze(net);
  // every ego names the facilitator and no ego tie crosses clusters, so all
  // 3 * 6 * 6 cross-cluster pairs go through it
  EXPECT_GE(r.summary.alter_mediated_distinct, 3u * 6u * 6u);
  EXPECT_EQ(r.summary.alter_mediated_distinct, r.summary.alter_mediated_triplets);
  const auto top = alter_ranking(net, 1);
  ASSERT_EQ(top.entries.size(), 1u);
  EXPECT_EQ(top.entries[0].alter, PersonId("f01"));
  EXPECT_EQ(top.entries[0].mediated_pairs, r.summary.alter_mediated_distinct);
}

TEST(Synth, ConfigValidation) {
  SynthConfig c;
  c.p_intra = 1.5;
  EXPECT_THROW(generate(c), Error);
  c = SynthConfig{};
  c.facilitator_count = 1000;
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
  c = SynthConfig{};
  c.cluster_sizes = {};
  EXPECT_THROW(validate(c), Error);
}

TEST(Synth, ConfigText) {
  const auto c = parse_synth_config(
      "# two clusters\n"
      "cluster_sizes = 10, 12\n"
      "p_intra = 0.4\n"
      "\n"
      "seed = 99  # trailing comment\n");
  EXPECT_EQ(c.cluster_sizes, (std::vector<std::size_t>{10, 12}));
  EXPECT_DOUBLE_EQ(c.p_intra, 0.4);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_DOUBLE_EQ(c.p_inter, SynthConfig{}.p_inter);
  EXPECT_EQ(parse_synth_config(to_config_text(c)), c);
  EXPECT_THROW(parse_synth_config("colour = blue\n"), Error);
  EXPECT_THROW(parse_synth_config("p_intra = lots\n"), Error);
}

TEST(Experiment, RecordShape) {
  SynthConfig c;
  c.cluster_sizes = {8, 8};
  c.facilitator_count = 2;
  WholeConfig wc;
  wc.cp_iterations = 2;
  const auto rec = intervention_experiment(c, 4, wc);
  ASSERT_EQ(rec.rows.size(), 4u);
  EXPECT_EQ(rec.median_delta.size(), kExperimentMetricCount);
  for (std::size_t r = 0; r < 4; ++r) {
    EXPECT_EQ(rec.rows[r].seed, derive_seed(c.seed, r));
    EXPECT_EQ(rec.rows[r].observed.size(), kExperimentMetricCount);
  }
  const auto m = metric_index("density");
  std::vector<double> d;
  for (const auto& row : rec.rows) d.push_back(row.observed[m] - row.counterfactual[m]);
  EXPECT_DOUBLE_EQ(rec.median_delta[m], median(d));
  EXPECT_THROW(metric_index("nope"), Error);
  EXPECT_THROW(intervention_experiment(c, 0, wc), Error);

  const auto csv = render_experiment_csv(rec, {{"tool", "x"}});
  EXPECT_EQ(csv.rfind("# tool: x\n", 0), 0u);
  const auto lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  EXPECT_EQ(lines, 1 + 1 + 4 * (kExperimentMetricCount + 2) + kExperimentMetricCount + 1);
  EXPECT_EQ(render_experiment_csv(intervention_experiment(c, 4, wc)), render_experiment_csv(rec));
}

TEST(Experiment, MedianSkipsNan) {
  const double nan = std::nan("");
  EXPECT_DOUBLE_EQ(median({3, nan, 1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_TRUE(std::isnan(median({nan})));
}

TEST(Experiment, ProjectTiesRaiseDensity) {
  SynthConfig c;
  c.cluster_sizes = {10, 10, 10};
  WholeConfig wc;
  wc.cp_iterations = 2;
  const auto rec = intervention_experiment(c, 10, wc);
  const auto m = metric_index("density");
  for (const auto& row : rec.rows) {
    if (row.project_ties > 0) {
      EXPECT_GT(row.delta(m), 0.0);
    } else {
      EXPECT_EQ(row.delta(m), 0.0);
    }
  }
}
