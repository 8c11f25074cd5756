// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Criterion 10 needs `--corpus DIR`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "egonet/egonet.hpp"
#include "oracles.hpp"

using namespace egonet;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EGONET_FIXTURES;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t partition_sum(const EldaSummary& s) {
  return s.direct + s.ego_mediated + s.alter_mediated_distinct + s.disconnected;
}

CommunityNetwork random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && u(rng) < p) edges.emplace_back(i, j);
    }
  }
  return oracle::make_digraph(n, edges);
}

// 1. Fast 2-ELDA equals the predicate-by-predicate evaluator.
Outcome elda_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> prob(0.1, 0.5);
  std::size_t mismatches = 0, checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t egos = 2 + rng() % 14;  // 2..15
    const std::size_t alters = rng() % 16;    // 0..15
    const auto net = oracle::random_net(rng, {egos, alters, prob(rng)});
    const auto slow = oracle::elda(net);
    const auto expect = oracle::ranking(slow);
    const auto rank = alter_ranking(net);
    bool ok = elda_summary(net) == slow.summary && rank.entries.size() == expect.size();
    for (std::size_t k = 0; ok && k < expect.size(); ++k) {
      ok = rank.entries[k].alter == expect[k].first && rank.entries[k].mediated_pairs == expect[k].second;
    }
    mismatches += !ok;
    ++checked;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("%zu networks, %zu mismatches, %.2f s", checked, mismatches, secs)};
}

// 2. Pair classes partition all ego pairs.
Outcome accounting_identity() {
  std::size_t checked = 0, broken = 0;
  auto check = [&](const CommunityNetwork& net) {
    const auto s = elda_summary(net);
    broken += partition_sum(s) != s.ego_count * (s.ego_count - 1) / 2 || s.total_pairs != partition_sum(s);
    ++checked;
  };
  std::mt19937_64 rng(2002);
  for (int i = 0; i < 500; ++i) check(oracle::random_net(rng, {2 + rng() % 40, rng() % 40, 0.02 + 0.3 * (rng() % 100) / 100.0}));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SynthConfig c;
    c.seed = seed;
    const auto net = generate(c);
    check(net);
    check(counterfactual_view(net));
  }
  const IngestConfig keep{ConflictPolicy::KeepPreExisting, PrunePolicy::none()};
  for (const char* name : {"community", "conflict", "dirty"}) {
    InputPaths p{kFixtures / name / "respondents.csv", kFixtures / name / "ties.csv", std::nullopt};
    if (fs::exists(kFixtures / name / "aliases.csv")) p.aliases = kFixtures / name / "aliases.csv";
    const auto net = ingest_pipeline(p, keep).network;
    check(net);
    check(counterfactual_view(net));
  }
  const bool reported = 976u + 2950u + 237u + 68608u == 382u * 381u / 2u;
  return {broken == 0 && reported, fmt("%zu networks, %zu violations; 976+2950+237+68608 = C(382,2): %s", checked,
                                       broken, reported ? "yes" : "no")};
}

// 3. Brandes against explicit shortest-path enumeration.
Outcome betweenness_oracle() {
  std::size_t seeds = 0, bad = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 600; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + rng() % 8;  // 2..9
    const double p = 0.1 + 0.6 * (rng() % 100) / 100.0;
    const auto net = seed % 3 == 0 ? oracle::random_net(rng, {1 + n / 2, n - 1 - n / 2, p}) : random_digraph(rng, n, p);
    const auto fast = betweenness(net);
    const auto slow = oracle::betweenness(net);
    for (std::size_t v = 0; v < fast.size(); ++v) {
      const double rel = std::fabs(fast[v] - slow[v]) / std::max(1.0, std::fabs(slow[v]));
      worst = std::max(worst, rel);
      bad += rel > 1e-9;
    }
    ++seeds;
  }
  return {bad == 0 && seeds >= 500, fmt("%zu graphs (n <= 9), worst relative error %.3g", seeds, worst)};
}

// 4. Restarted hill climbing reaches the exhaustive optimum.
Outcome core_periphery_optimum() {
  std::size_t hits = 0, instances = 0;
  for (std::uint64_t seed = 1; instances < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 6 + rng() % 7;  // 6..12
    const double p = 0.15 + 0.35 * (rng() % 100) / 100.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (u(rng) < p) edges.emplace_back(i, j);
      }
    }
    const auto g = undirected_projection(oracle::make_digraph(n, edges));
    if (g.edge_count == 0 || g.edge_count == n * (n - 1) / 2) continue;
    const auto r = core_periphery_fit(g, 20, seed);
    hits += std::fabs(r.fit - oracle::cp_optimum(g)) <= 1e-9;
    ++instances;
  }
  return {hits >= 95, fmt("%zu/%zu instances at the optimum (20 restarts, n <= 12)", hits, instances)};
}

// 5. Freeman centralisation on stars and regular graphs.
Outcome freeman_calibration() {
  std::size_t bad = 0, checks = 0;
  auto expect = [&](double got, double want) {
    bad += got != want;
    ++checks;
  };
  for (std::size_t n = 3; n <= 20; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> both, out, in, cycle, complete;
    for (std::size_t i = 1; i < n; ++i) {
      both.emplace_back(0, i);
      both.emplace_back(i, 0);
      out.emplace_back(0, i);
      in.emplace_back(i, 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      cycle.emplace_back(i, (i + 1) % n);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) complete.emplace_back(i, j);
      }
    }
    const auto star = oracle::make_digraph(n, both);
    // reciprocated star: maximal on the projection and for directed betweenness;
    // the directed degree maxima are the one-way stars below
    expect(degree_centralisation(star, DegreeMode::All), 1.0);
    expect(betweenness_centralisation(star), 1.0);
    expect(degree_centralisation(oracle::make_digraph(n, out), DegreeMode::Out), 1.0);
    expect(degree_centralisation(oracle::make_digraph(n, out), DegreeMode::All), 1.0);
    expect(degree_centralisation(oracle::make_digraph(n, in), DegreeMode::In), 1.0);
    for (const auto* e : {&cycle, &complete}) {
      const auto g = oracle::make_digraph(n, *e);
      expect(degree_centralisation(g, DegreeMode::All), 0.0);
      expect(degree_centralisation(g, DegreeMode::In), 0.0);
      expect(degree_centralisation(g, DegreeMode::Out), 0.0);
      expect(betweenness_centralisation(g), 0.0);
    }
  }
  return {bad == 0, fmt("%zu exact checks on stars, cycles and complete graphs (n = 3..20), %zu off", checks, bad)};
}

// 6. Removing project ties never reconnects anything.
Outcome counterfactual_monotonicity() {
  std::size_t networks = 0, bad = 0, tried = 0;
  for (std::uint64_t seed = 1; networks < 200 && tried < 2000; ++seed, ++tried) {
    SynthConfig c;
    c.cluster_sizes = {8 + seed % 5, 10, 12};
    c.project_tie_rate = 0.02 + 0.01 * static_cast<double>(seed % 4);
    c.seed = seed;
    const auto obs = generate(c);
    const auto cf = counterfactual_view(obs);
    if (cf.edge_count() == obs.edge_count()) continue;  // no project ties drawn
    ++networks;
    for (const auto& [a, b] : {std::pair{whole_view(obs), whole_view(cf)}, std::pair{obs, cf}}) {
      bad += !(fragmentation(b) >= fragmentation(a));
      bad += !(fragmentation(b, FragmentationMode::Directed) >= fragmentation(a, FragmentationMode::Directed));
      bad += !(density(b) < density(a));
    }
  }
  return {networks >= 200 && bad == 0,
          fmt("%zu networks with project ties, %zu violations (whole and full views)", networks, bad)};
}

// 7. Project ties concentrate betweenness; facilitators surface without them.
Outcome experiment_direction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rec = intervention_experiment(SynthConfig{}, 50, WholeConfig{});
  const double med = rec.median_delta[metric_index("betweenness_centralisation")];
  std::size_t with_ties = 0;
  for (const auto& row : rec.rows) with_ties += row.project_ties > 0;
  const bool pass = med < 0.0 && rec.facilitators_on_top_count == rec.rows.size() && with_ties == rec.rows.size();
  return {pass, fmt("median betweenness-centralisation delta %.4f; facilitators top-3 in %zu/%zu; %.2f s", med,
                    rec.facilitators_on_top_count, rec.rows.size(), seconds_since(t0))};
}

// 8. Brokerage roles partition the open two-paths.
Outcome brokerage_partition() {
  std::size_t graphs = 0, bad = 0, triples = 0;
  std::mt19937_64 rng(8008);
  const std::vector<std::string> groups{"A", "B", "C", "D"};
  for (int i = 0; i < 200; ++i) {
    const std::size_t egos = 3 + rng() % 38;
    const std::size_t alters = rng() % (51 - egos);
    auto net = oracle::random_net(rng, {egos, alters, 0.05 + 0.25 * (rng() % 100) / 100.0, 0.0,
                                        std::vector<std::string>(groups.begin(), groups.begin() + 1 + rng() % 4)});
    const Grouping by_gender{"gender", {}};
    const auto fast = brokerage_roles(net, by_gender);
    const auto slow = oracle::brokerage(net, [&](NodeIndex v) { return by_gender.category(net.attributes(v)); });
    for (const auto& [id, p] : fast) {
      const auto& o = slow.at(id);
      bad += p.total() != o.open_two_paths;
      bad += p.coordinator != o.roles[0] || p.consultant != o.roles[1] || p.gatekeeper != o.roles[2] ||
             p.representative != o.roles[3] || p.liaison != o.roles[4];
      triples += o.open_two_paths;
    }
    ++graphs;
  }
  // each group pattern of a triple satisfies exactly one role predicate
  for (const auto& s : groups) {
    for (const auto& b : groups) {
      for (const auto& t : groups) {
        const int matches = (s == b && b == t) + (s == t && s != b) + (s == b && b != t) + (b == t && s != b) +
                            (s != b && b != t && s != t);
        bad += matches != 1;
      }
    }
  }
  return {bad == 0, fmt("%zu graphs (n <= 50), %zu open two-paths, %zu mismatches", graphs, triples, bad)};
}

// 9. Byte-identical reports and a lossless edge-csv round trip.
Outcome determinism_round_trip() {
  auto reports = [] {
    const InputPaths p{kFixtures / "community/respondents.csv", kFixtures / "community/ties.csv",
                       kFixtures / "community/aliases.csv"};
    const auto net = ingest_pipeline(p, {}).network;
    const auto cf = counterfactual_view(net);
    WholeConfig wc;
    wc.seed = 7;
    std::string all;
    for (auto f : {ReportFormat::Markdown, ReportFormat::Csv, ReportFormat::Json}) {
      all += render_comparison(whole_report(whole_view(net), wc, "observed"),
                               whole_report(whole_view(cf), wc, "counterfactual"), f, {{"seed", "7"}});
      all += render_elda_summary({{"observed", elda_summary(net)}, {"counterfactual", elda_summary(cf)}}, f);
      all += render_brokerage(brokerage_roles(net, Grouping{}), f);
    }
    const auto egos = std::vector<PersonId>{PersonId("e1"), PersonId("e2")};
    const auto o = ego_summaries(net, egos), c = ego_summaries(cf, egos);
    all += render_ego_table(egos, o, &c, ReportFormat::Markdown);
    all += render_pairs_csv(classify_all_pairs(net));
    SynthConfig sc;
    sc.seed = 5;
    all += export_edge_csv(generate(sc));
    return all;
  };
  const bool same = reports() == reports();

  std::size_t trips = 0, broken = 0;
  std::mt19937_64 rng(9009);
  for (int i = 0; i < 50; ++i) {
    const auto net = oracle::random_net(rng, {5 + rng() % 40, rng() % 40, 0.1, 0.3, {"F", "M"}, {"p", "q"}});
    const auto back = import_network(export_nodes_csv(net), export_edge_csv(net));
    broken += !(back == net) || export_edge_csv(back) != export_edge_csv(net);
    ++trips;
  }
  return {same && broken == 0,
          fmt("reports identical across runs: %s; %zu round trips, %zu lossy", same ? "yes" : "no", trips, broken)};
}

// 10. Reported 2-ELDA counts on the original corpus.
Outcome corpus_counts(const fs::path& dir, ConflictPolicy conflict) {
  CommunityNetwork net;
  if (fs::exists(dir / "nodes.csv")) {
    net = load_network(dir, conflict);
  } else {
    InputPaths p{dir / "respondents.csv", dir / "ties.csv", std::nullopt};
    if (fs::exists(dir / "aliases.csv")) p.aliases = dir / "aliases.csv";
    net = ingest_pipeline(p, {conflict, PrunePolicy::none()}).network;
  }
  const auto s = elda_summary(net);
  const bool pass = s.direct == 976 && s.ego_mediated == 2950 && s.alter_mediated_distinct == 237 &&
                    s.disconnected == 68608;
  return {pass, fmt("got %zu / %zu / %zu / %zu over %zu egos, want 976 / 2950 / 237 / 68608", s.direct,
                    s.ego_mediated, s.alter_mediated_distinct, s.disconnected, s.ego_count)};
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<fs::path> corpus;
  ConflictPolicy conflict = ConflictPolicy::Reject;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--corpus" && i + 1 < argc) {
      corpus = argv[++i];
    } else if (a == "--keep-pre-existing") {
      conflict = ConflictPolicy::KeepPreExisting;
    } else {
      std::fprintf(stderr, "usage: %s [--corpus DIR] [--keep-pre-existing]\n", argv[0]);
      return 1;
    }
  }

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"2-ELDA oracle equivalence", elda_oracle},
      {"pair accounting identity", accounting_identity},
      {"betweenness vs path enumeration", betweenness_oracle},
      {"core/periphery optimum at small n", core_periphery_optimum},
      {"Freeman centralisation calibration", freeman_calibration},
      {"counterfactual monotonicity", counterfactual_monotonicity},
      {"intervention experiment direction", experiment_direction},
      {"brokerage role partition", brokerage_partition},
      {"determinism and edge-csv round trip", determinism_round_trip},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  if (!corpus) {
    std::printf("SKIP 10 corpus 2-ELDA counts: no --corpus DIR given\n");
  } else {
    Outcome o;
    try {
      o = corpus_counts(*corpus, conflict);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s 10 corpus 2-ELDA counts: %s\n", o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
