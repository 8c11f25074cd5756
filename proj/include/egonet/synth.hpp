#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "egonet/csv.hpp"
#include "egonet/elda.hpp"
#include "egonet/error.hpp"
#include "egonet/network.hpp"
#include "egonet/random.hpp"
#include "egonet/whole_metrics.hpp"

// Seeded community generator: planted ego clusters, cluster-local alters,
// facilitator alters mentioned from every cluster, and optional project
// ties injected between clusters.
//
// Draw order (one Rng seeded with `seed`):
//   1. gender per ego, ego order
//   2. ego->ego ties, ordered pairs (i, j), i != j, row-major; a hit draws a
//      social label next
//   3. project ties, ordered cross-cluster pairs, row-major; a draw is made
//      for every pair, the tie is kept only if the pair has no edge yet
//   4. regular alter mentions: alter k lives in cluster k % clusters; one
//      draw per ego of that cluster, a hit draws a label next
//   5. facilitator mentions: one draw per (facilitator, ego)

namespace egonet {

struct SynthConfig {
  std::vector<std::size_t> cluster_sizes{15, 15, 15, 15};
  double p_intra = 0.3;
  double p_inter = 0.01;
  double alter_fraction = 0.5;  // alter budget relative to ego count
  std::size_t facilitator_count = 3;
  double project_tie_rate = 0.02;
  double alter_mention_rate = 0.1;
  double facilitator_mention_rate = 0.3;
  std::uint64_t seed = 1;

  bool operator==(const SynthConfig&) const = default;
};

inline std::size_t ego_total(const SynthConfig& c) {
  std::size_t n = 0;
  for (auto s : c.cluster_sizes) n += s;
  return n;
}

inline std::size_t alter_budget(const SynthConfig& c) {
  return static_cast<std::size_t>(std::llround(c.alter_fraction * static_cast<double>(ego_total(c))));
}

inline void validate(const SynthConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidConfig, m); };
  if (c.cluster_sizes.empty()) fail("cluster_sizes must not be empty");
  for (auto s : c.cluster_sizes) {
    if (s == 0) fail("cluster sizes must be positive");
  }
  const std::pair<const char*, double> probs[] = {
      {"p_intra", c.p_intra},
      {"p_inter", c.p_inter},
      {"project_tie_rate", c.project_tie_rate},
      {"alter_mention_rate", c.alter_mention_rate},
      {"facilitator_mention_rate", c.facilitator_mention_rate}};
  for (const auto& [name, p] : probs) {
    if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must be in [0, 1]");
  }
  if (!(c.alter_fraction >= 0.0) || !std::isfinite(c.alter_fraction)) fail("alter_fraction must be >= 0");
  if (c.facilitator_count > alter_budget(c)) {
    fail("facilitator_count " + std::to_string(c.facilitator_count) + " exceeds alter budget " +
         std::to_string(alter_budget(c)));
  }
}

namespace detail {

inline std::string padded(char prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  if (digits.size() < static_cast<std::size_t>(width)) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

inline int digits(std::size_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

inline TieLabelSet social_label(Rng& rng) {
  TieLabelSet l;
  switch (rng.below(4)) {
    case 0: l.family = true; break;
    case 1: l.friend_ = true; break;
    case 2: l.coworker = true; break;
    default: l.other = true;
  }
  l.pre_existing = true;
  return l;
}

}  // namespace detail

inline CommunityNetwork generate(const SynthConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const std::size_t n = ego_total(config);
  const int ego_width = std::max(4, detail::digits(n));

  std::vector<std::size_t> cluster(n);
  for (std::size_t k = 0, i = 0; k < config.cluster_sizes.size(); ++k) {
    for (std::size_t j = 0; j < config.cluster_sizes[k]; ++j) cluster[i++] = k;
  }

  std::vector<Node> egos(n);
  for (std::size_t i = 0; i < n; ++i) {
    egos[i].id = PersonId(detail::padded('e', i + 1, ego_width));
    egos[i].attributes.is_respondent = true;
    egos[i].attributes.gender = rng.bernoulli(0.5) ? "F" : "M";
    egos[i].attributes.role_tags.insert("cluster=" + std::to_string(cluster[i]));
  }

  std::vector<Tie> ties;
  std::vector<char> linked(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double p = cluster[i] == cluster[j] ? config.p_intra : config.p_inter;
      if (rng.bernoulli(p)) {
        ties.push_back({egos[i].id, egos[j].id, detail::social_label(rng), 0});
        linked[i * n + j] = 1;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || cluster[i] == cluster[j]) continue;
      if (rng.bernoulli(config.project_tie_rate) && !linked[i * n + j]) {
        TieLabelSet l;
        l.coworker = true;
        l.from_project = true;
        ties.push_back({egos[i].id, egos[j].id, l, 0});
        egos[i].attributes.projects.insert("joint");
        egos[j].attributes.projects.insert("joint");
      }
    }
  }

  std::vector<Node> nodes = egos;
  const std::size_t budget = alter_budget(config);
  const std::size_t regular = budget - config.facilitator_count;
  const int alter_width = std::max(4, detail::digits(regular));
  for (std::size_t k = 0; k < regular; ++k) {
    const std::size_t home = k % config.cluster_sizes.size();
    Node a{PersonId(detail::padded('a', k + 1, alter_width)), {}};
    a.attributes.role_tags.insert("cluster=" + std::to_string(home));
    bool mentioned = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (cluster[i] != home || !rng.bernoulli(config.alter_mention_rate)) continue;
      TieLabelSet l = detail::social_label(rng);
      ties.push_back({egos[i].id, a.id, l, 0});
      mentioned = true;
    }
    if (mentioned) nodes.push_back(std::move(a));
  }

  const int fac_width = std::max(2, detail::digits(config.facilitator_count));
  for (std::size_t f = 0; f < config.facilitator_count; ++f) {
    Node a{PersonId(detail::padded('f', f + 1, fac_width)), {}};
    a.attributes.role_tags.insert("facilitator");
    bool mentioned = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(config.facilitator_mention_rate)) continue;
      TieLabelSet l;
      l.other = true;
      l.pre_existing = true;
      ties.push_back({egos[i].id, a.id, l, 0});
      mentioned = true;
    }
    if (mentioned) nodes.push_back(std::move(a));
  }

  return CommunityNetwork::from_parts(std::move(nodes), ties);
}

/// Flat `key = value` text; '#' starts a comment. cluster_sizes is a
/// comma-separated list. Unknown keys are rejected.
inline SynthConfig parse_synth_config(std::string_view text) {
  SynthConfig c;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& m) {
    throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": " + m);
  };
  auto number = [&](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) fail("'" + key + "' expects a number, got '" + v + "'");
    return d;
  };
  auto count = [&](const std::string& key, const std::string& v) -> std::uint64_t {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      fail("'" + key + "' expects a non-negative integer, got '" + v + "'");
    }
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      fail("'" + key + "' is out of range");
    }
    return 0;
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "cluster_sizes") {
      c.cluster_sizes.clear();
      std::string_view rest = value;
      while (true) {
        const auto comma = rest.find(',');
        c.cluster_sizes.push_back(count(key, trim(rest.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else if (key == "p_intra") {
      c.p_intra = number(key, value);
    } else if (key == "p_inter") {
      c.p_inter = number(key, value);
    } else if (key == "alter_fraction") {
      c.alter_fraction = number(key, value);
    } else if (key == "facilitator_count") {
      c.facilitator_count = count(key, value);
    } else if (key == "project_tie_rate") {
      c.project_tie_rate = number(key, value);
    } else if (key == "alter_mention_rate") {
      c.alter_mention_rate = number(key, value);
    } else if (key == "facilitator_mention_rate") {
      c.facilitator_mention_rate = number(key, value);
    } else if (key == "seed") {
      c.seed = count(key, value);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

/// Inverse of parse_synth_config; numbers print with 17 significant digits.
inline std::string to_config_text(const SynthConfig& c) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::vector<std::string> sizes;
  for (auto s : c.cluster_sizes) sizes.push_back(std::to_string(s));
  return "cluster_sizes = " + join_list(sizes, ",") + "\n" +
         "p_intra = " + num(c.p_intra) + "\n" +
         "p_inter = " + num(c.p_inter) + "\n" +
         "alter_fraction = " + num(c.alter_fraction) + "\n" +
         "facilitator_count = " + std::to_string(c.facilitator_count) + "\n" +
         "project_tie_rate = " + num(c.project_tie_rate) + "\n" +
         "alter_mention_rate = " + num(c.alter_mention_rate) + "\n" +
         "facilitator_mention_rate = " + num(c.facilitator_mention_rate) + "\n" +
         "seed = " + std::to_string(c.seed) + "\n";
}

// ---------------------------------------------------------------------------
// Intervention experiment

/// Whole-view measures (ego-induced subgraph) followed by 2-ELDA counts on
/// the full network. "assortativity_cluster" stands in for heterophilic
/// bridging: it is assortativity by the planted cluster tag.
inline constexpr std::string_view kExperimentMetrics[] = {
    "density",
    "fragmentation",
    "degree_centralisation",
    "betweenness_centralisation",
    "transitivity",
    "modularity",
    "core_periphery",
    "average_distance",
    "average_degree",
    "assortativity_cluster",
    "elda_ratio",
    "alter_mediated_distinct",
    "disconnected_pairs",
};

inline constexpr std::size_t kExperimentMetricCount = std::size(kExperimentMetrics);

struct ExperimentRow {
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::size_t project_ties = 0;
  std::vector<double> observed;        // kExperimentMetrics order; NaN when undefined
  std::vector<double> counterfactual;
  bool facilitators_on_top = false;    // counterfactual top min(3, facilitators) are all facilitators

  double delta(std::size_t m) const { return observed[m] - counterfactual[m]; }
};

struct ExperimentRecord {
  SynthConfig config;
  std::size_t replications = 0;
  WholeConfig whole;
  std::vector<ExperimentRow> rows;
  std::vector<double> median_delta;    // observed - counterfactual, NaN rows skipped
  std::size_t facilitators_on_top_count = 0;
};

inline double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
}

namespace detail {

inline std::vector<double> experiment_values(const CommunityNetwork& net, const WholeConfig& wc) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto whole = whole_view(net);
  const auto r = whole_report(whole, wc);
  auto get = [&](const std::optional<double>& v) { return v ? *v : nan; };
  std::vector<double> out{
      get(r.density),
      get(r.fragmentation),
      get(r.degree_centralisation_all),
      get(r.betweenness_centralisation),
      get(r.transitivity),
      r.modularity ? r.modularity->score : nan,
      r.core_periphery ? r.core_periphery->fit : nan,
      get(r.average_distance),
      get(r.average_degree),
      r.assortativity.count("tag:cluster") ? get(r.assortativity.at("tag:cluster")) : nan,
  };
  const auto e = elda_summary(net);
  out.push_back(e.elda_ratio);
  out.push_back(static_cast<double>(e.alter_mediated_distinct));
  out.push_back(static_cast<double>(e.disconnected));
  return out;
}

}  // namespace detail

/// Replication r uses generator seed derive_seed(config.seed, r); the
/// measure seeds come from `whole`.
inline ExperimentRecord intervention_experiment(const SynthConfig& config, std::size_t replications,
                                                WholeConfig whole = {}) {
  validate(config);
  if (replications < 1) throw Error(ErrorCode::InvalidConfig, "replications must be >= 1");
  whole.assortativity_keys = {"tag:cluster"};
  ExperimentRecord rec;
  rec.config = config;
  rec.replications = replications;
  rec.whole = whole;
  for (std::size_t r = 0; r < replications; ++r) {
    SynthConfig c = config;
    c.seed = derive_seed(config.seed, r);
    const auto observed = generate(c);
    const auto cf = counterfactual_view(observed);

    ExperimentRow row;
    row.replication = r;
    row.seed = c.seed;
    row.project_ties = observed.edge_count() - cf.edge_count();
    row.observed = detail::experiment_values(observed, whole);
    row.counterfactual = detail::experiment_values(cf, whole);

    const std::size_t k = std::min<std::size_t>(3, config.facilitator_count);
    const auto ranking = alter_ranking(cf, k);
    row.facilitators_on_top = k > 0 && ranking.entries.size() == k &&
                              std::all_of(ranking.entries.begin(), ranking.entries.end(), [&](const AlterScore& s) {
                                return cf.attributes(*cf.find(s.alter)).role_tags.count("facilitator") > 0;
                              });
    rec.facilitators_on_top_count += row.facilitators_on_top;
    rec.rows.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < kExperimentMetricCount; ++m) {
    std::vector<double> d;
    for (const auto& row : rec.rows) d.push_back(row.delta(m));
    rec.median_delta.push_back(median(d));
  }
  return rec;
}

inline std::size_t metric_index(std::string_view name) {
  for (std::size_t i = 0; i < kExperimentMetricCount; ++i) {
    if (kExperimentMetrics[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown experiment metric '" + std::string(name) + "'");
}

/// Long format: one line per (replication, metric), then one median line
/// per metric with replication "median". Leading '#' lines carry provenance.
inline std::string render_experiment_csv(const ExperimentRecord& rec,
                                         const std::map<std::string, std::string>& provenance = {}) {
  auto num = [](double v) {
    if (std::isnan(v)) return std::string("NA");
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  std::string out;
  for (const auto& [k, v] : provenance) out += "# " + k + ": " + v + "\n";
  out += "replication,seed,metric,observed,counterfactual,delta\n";
  for (const auto& row : rec.rows) {
    const std::string r = std::to_string(row.replication);
    const std::string s = std::to_string(row.seed);
    for (std::size_t m = 0; m < kExperimentMetricCount; ++m) {
      out += csv_line({r, s, std::string(kExperimentMetrics[m]), num(row.observed[m]), num(row.counterfactual[m]),
                       num(row.delta(m))});
    }
    out += csv_line({r, s, "project_ties", num(static_cast<double>(row.project_ties)), "0",
                     num(static_cast<double>(row.project_ties))});
    out += csv_line({r, s, "facilitators_on_top", "", row.facilitators_on_top ? "1" : "0", ""});
  }
  for (std::size_t m = 0; m < kExperimentMetricCount; ++m) {
    out += csv_line({"median", "", std::string(kExperimentMetrics[m]), "", "", num(rec.median_delta[m])});
  }
  out += csv_line({"total", "", "facilitators_on_top", "", std::to_string(rec.facilitators_on_top_count), ""});
  return out;
}

}  // namespace egonet
