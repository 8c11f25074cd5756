// egonet: command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 unexpected failure, 10 + ErrorCode otherwise
// (see `egonet --exit-codes`).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "egonet/egonet.hpp"

namespace fs = std::filesystem;
using namespace egonet;

namespace {

struct Common {
  std::string input;
  bool counterfactual = false;
  std::string conflict = "reject";
  std::uint64_t seed = 1;
  std::size_t cp_iterations = 20;
  std::string format = "md";
  std::string out;
};

ConflictPolicy parse_conflict(const std::string& s) {
  if (s == "reject") return ConflictPolicy::Reject;
  if (s == "keep-pre-existing") return ConflictPolicy::KeepPreExisting;
  throw Error(ErrorCode::InvalidConfig, "--conflict must be reject or keep-pre-existing");
}

PrunePolicy parse_prune(const std::string& s) {
  if (s == "none") return PrunePolicy::none();
  if (s == "largest") return PrunePolicy::keep_largest();
  if (s.rfind("min:", 0) == 0) {
    const auto k = s.substr(4);
    if (!k.empty() && k.find_first_not_of("0123456789") == std::string::npos) {
      return PrunePolicy::at_least(std::stoull(k));
    }
  }
  throw Error(ErrorCode::InvalidConfig, "--prune must be none, largest or min:K");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::Markdown: return ".md";
    case ReportFormat::Csv: return ".csv";
    case ReportFormat::Json: return ".json";
  }
  return ".txt";
}

/// Writes `name` under --out, or to stdout when no directory was given.
void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file(fs::path(out_dir) / name, content);
  }
}

Provenance base_provenance(const std::string& command) {
  return {{"tool", "egonet " + std::string(kVersion)}, {"command", command}};
}

std::string provenance_json_text(const Provenance& p) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["provenance"] = provenance_json(p);
  return j.dump(2) + "\n";
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << "warning: " << to_string(d) << "\n";
}

// --- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::string respondents, ties, aliases, prune = "none", conflict = "reject", out;
};

int run_ingest(const IngestArgs& a) {
  IngestConfig config{parse_conflict(a.conflict), parse_prune(a.prune)};
  InputPaths paths{a.respondents, a.ties, std::nullopt};
  if (!a.aliases.empty()) paths.aliases = a.aliases;
  const auto result = ingest_pipeline(paths, config);
  print_diagnostics(result.diagnostics);

  Provenance prov = base_provenance("ingest");
  prov["respondents"] = fs::path(a.respondents).filename().string();
  prov["ties"] = fs::path(a.ties).filename().string();
  prov["aliases"] = a.aliases.empty() ? "none" : fs::path(a.aliases).filename().string();
  prov["prune"] = a.prune;
  prov["conflict"] = a.conflict;

  const fs::path out(a.out);
  save_network(result.network, out);
  write_file(out / "cleaning.csv", render_cleaning_csv(result.cleaning));
  write_file(out / "cleaning.txt", render_cleaning_table(result.cleaning));
  std::string prune = "size,node_ids\n";
  for (const auto& c : result.prune.removed_components) {
    std::vector<std::string> ids;
    for (const auto& id : c.node_ids) ids.push_back(id.value);
    prune += csv_line({std::to_string(c.size), join_list(ids)});
  }
  write_file(out / "prune.csv", prune);
  write_file(out / "run.json", provenance_json_text(prov));
  std::cerr << "ingested " << result.network.node_count() << " nodes (" << result.network.ego_count()
            << " egos), " << result.network.edge_count() << " edges";
  if (result.prune.removed_node_count) {
    std::cerr << "; pruned " << result.prune.removed_node_count << " nodes in "
              << result.prune.removed_components.size() << " components";
  }
  std::cerr << "\n";
  return 0;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  Common c;
  bool whole = false, ego = false, brokerage = false;
  std::string select;
  std::string fragmentation_mode = "undirected";
  std::string assortativity_keys = "gender,projects";
  std::string grouping = "projects";
  std::string precedence;
};

int run_analyze(const AnalyzeArgs& a) {
  const auto format = parse_report_format(a.c.format);
  const auto net = load_network(a.c.input, parse_conflict(a.c.conflict));
  bool whole = a.whole;
  if (!a.whole && !a.ego && !a.brokerage) whole = true;

  WholeConfig wc;
  wc.seed = a.c.seed;
  wc.cp_iterations = a.c.cp_iterations;
  if (a.fragmentation_mode == "undirected") {
    wc.fragmentation_mode = FragmentationMode::Undirected;
  } else if (a.fragmentation_mode == "directed") {
    wc.fragmentation_mode = FragmentationMode::Directed;
  } else {
    throw Error(ErrorCode::InvalidConfig, "--fragmentation-mode must be undirected or directed");
  }
  wc.assortativity_keys = split_commas(a.assortativity_keys);

  Provenance prov = base_provenance("analyze");
  prov["input"] = fs::path(a.c.input).filename().string();
  prov["counterfactual"] = a.c.counterfactual ? "remove from_project ties" : "off";
  prov["conflict"] = a.c.conflict;
  prov["seed"] = std::to_string(a.c.seed);
  prov["cp_iterations"] = std::to_string(a.c.cp_iterations);
  prov["fragmentation_mode"] = a.fragmentation_mode;
  prov["assortativity_keys"] = a.assortativity_keys;
  prov["whole_view"] = "subgraph induced on egos";
  prov["ego_neighbours"] = "union of in- and out-neighbours";

  const auto cf = a.c.counterfactual ? std::optional<CommunityNetwork>(counterfactual_view(net)) : std::nullopt;

  if (whole) {
    const auto obs = whole_report(whole_view(net), wc, "observed");
    if (cf) {
      const auto rep = whole_report(whole_view(*cf), wc, "counterfactual");
      emit(a.c.out, "whole" + extension(format), render_comparison(obs, rep, format, prov));
    } else {
      emit(a.c.out, "whole" + extension(format), render_report(obs, format, prov));
    }
  }
  if (a.ego) {
    std::vector<PersonId> egos;
    if (a.select.empty()) {
      for (auto v : net.egos()) egos.push_back(net.id(v));
    } else {
      for (const auto& s : split_commas(a.select)) egos.emplace_back(s);
    }
    for (const auto& e : egos) detail::require_ego(net, e);
    prov["select"] = a.select.empty() ? "all egos" : a.select;
    const auto obs = ego_summaries(net, egos);
    std::optional<std::map<PersonId, EgoSummary>> rep;
    if (cf) rep = ego_summaries(*cf, egos);
    emit(a.c.out, "ego" + extension(format), render_ego_table(egos, obs, rep ? &*rep : nullptr, format, prov));
  }
  if (a.brokerage) {
    Grouping g{a.grouping, split_commas(a.precedence)};
    prov["brokerage_grouping"] = a.grouping;
    prov["project_precedence"] = a.precedence.empty() ? "alphabetical" : a.precedence;
    emit(a.c.out, "brokerage" + extension(format), render_brokerage(brokerage_roles(net, g), format, prov));
    if (cf) {
      emit(a.c.out, "brokerage_counterfactual" + extension(format),
           render_brokerage(brokerage_roles(*cf, g), format, prov));
    }
  }
  return 0;
}

// --- elda ------------------------------------------------------------------

struct EldaArgs {
  Common c;
  std::size_t top_k = 10;
  std::vector<std::string> emit{"summary", "ranking"};
};

int run_elda(const EldaArgs& a) {
  const auto format = parse_report_format(a.c.format);
  const auto net = load_network(a.c.input, parse_conflict(a.c.conflict));
  std::vector<std::pair<std::string, CommunityNetwork>> views{{"observed", net}};
  if (a.c.counterfactual) views.emplace_back("counterfactual", counterfactual_view(net));

  Provenance prov = base_provenance("elda");
  prov["input"] = fs::path(a.c.input).filename().string();
  prov["counterfactual"] = a.c.counterfactual ? "remove from_project ties" : "off";
  prov["top_k"] = std::to_string(a.top_k);
  prov["pairs"] = "unordered ego pairs; direct > ego_mediated > alter_mediated > disconnected";

  const std::set<std::string> emits(a.emit.begin(), a.emit.end());
  std::vector<std::pair<std::string, EldaSummary>> summaries;
  std::vector<std::pair<std::string, AlterRanking>> rankings;
  for (const auto& [name, v] : views) {
    const auto r = elda_analyze(v);
    summaries.emplace_back(name, r.summary);
    rankings.emplace_back(name, make_ranking(v, r.mediated, a.top_k));
  }
  if (emits.count("summary")) emit(a.c.out, "elda_summary" + extension(format), render_elda_summary(summaries, format, prov));
  if (emits.count("ranking")) emit(a.c.out, "elda_ranking" + extension(format), render_ranking(rankings, format, prov));
  if (emits.count("pairs")) {
    for (const auto& [name, v] : views) {
      Provenance p = prov;
      p["view"] = name;
      emit(a.c.out, "elda_pairs_" + name + ".csv", render_pairs_csv(classify_all_pairs(v), p));
    }
  }
  return 0;
}

// --- export ----------------------------------------------------------------

struct ExportArgs {
  Common c;
  bool whole = false;
};

int run_export(const ExportArgs& a) {
  const auto gf = parse_graph_format(a.c.format == "md" ? "graphml" : a.c.format);
  auto net = load_network(a.c.input, parse_conflict(a.c.conflict));
  if (a.c.counterfactual) net = counterfactual_view(net);
  if (a.whole) net = whole_view(net);
  const std::string ext = gf == GraphFormat::GraphML ? ".graphml" : gf == GraphFormat::Dot ? ".dot" : ".csv";
  emit(a.c.out, "network" + ext, export_graph(net, gf));
  if (!a.c.out.empty()) {
    write_file(fs::path(a.c.out) / "palette.csv", export_palette(net));
    Provenance prov = base_provenance("export");
    prov["input"] = fs::path(a.c.input).filename().string();
    prov["counterfactual"] = a.c.counterfactual ? "remove from_project ties" : "off";
    prov["whole"] = a.whole ? "egos only" : "off";
    prov["format"] = a.c.format;
    write_file(fs::path(a.c.out) / "run.json", provenance_json_text(prov));
  }
  return 0;
}

// --- synth / experiment ----------------------------------------------------

struct SynthArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t reps = 50;
  std::uint64_t metric_seed = 1;
  std::size_t cp_iterations = 20;
};

SynthConfig load_synth(const SynthArgs& a) {
  SynthConfig c = a.config.empty() ? SynthConfig{} : parse_synth_config(read_file(a.config));
  if (a.seed) c.seed = *a.seed;
  validate(c);
  return c;
}

int run_synth(const SynthArgs& a) {
  const auto config = load_synth(a);
  const auto net = generate(config);
  save_network(net, a.out);
  Provenance prov = base_provenance("synth");
  prov["config"] = to_config_text(config);
  write_file(fs::path(a.out) / "run.json", provenance_json_text(prov));
  std::cerr << "generated " << net.node_count() << " nodes (" << net.ego_count() << " egos), " << net.edge_count()
            << " edges\n";
  return 0;
}

int run_experiment(const SynthArgs& a) {
  const auto config = load_synth(a);
  WholeConfig wc;
  wc.seed = a.metric_seed;
  wc.cp_iterations = a.cp_iterations;
  const auto rec = intervention_experiment(config, a.reps, wc);
  Provenance prov = base_provenance("experiment");
  std::string config_text = to_config_text(config);
  config_text.pop_back();
  for (std::size_t i = 0; (i = config_text.find('\n', i)) != std::string::npos;) config_text.replace(i, 1, "; ");
  prov["config"] = config_text;
  prov["replications"] = std::to_string(a.reps);
  prov["replication_seed"] = "derive_seed(seed, r)";
  prov["metric_seed"] = std::to_string(a.metric_seed);
  prov["cp_iterations"] = std::to_string(a.cp_iterations);
  prov["delta"] = "observed - counterfactual";
  prov["views"] = "whole-network measures on egos only; 2-ELDA on the full network";
  prov["bridging"] = "assortativity_cluster = assortativity by planted cluster";
  const auto text = render_experiment_csv(rec, prov);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    const fs::path p(a.out);
    write_file(p.extension() == ".csv" ? p : p / "experiment.csv", text);
  }
  const auto bc = rec.median_delta[metric_index("betweenness_centralisation")];
  std::fprintf(stderr, "median betweenness centralisation delta %.6g; facilitators on top in %zu/%zu\n", bc,
               rec.facilitators_on_top_count, rec.replications);
  return 0;
}

std::string exit_code_table() {
  std::string out = "0\tok\n1\tusage error\n2\tunexpected failure\n";
  for (int i = 0; i <= static_cast<int>(ErrorCode::InvalidNetwork); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    out += std::to_string(exit_code(code)) + "\t" + std::string(to_string(code)) + "\n";
  }
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool counterfactual = true) {
  cmd->add_option("--input", c.input, "network directory (nodes.csv, edges.csv) or edge-list file")->required();
  if (counterfactual) cmd->add_flag("--counterfactual", c.counterfactual, "also evaluate the view without project ties");
  cmd->add_option("--conflict", c.conflict, "reject|keep-pre-existing")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ego/alter community network analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  bool show_codes = false;
  app.add_flag("--exit-codes", show_codes, "print the exit code table");
  app.require_subcommand(0, 1);

  IngestArgs ia;
  auto* ingest_cmd = app.add_subcommand("ingest", "build a network from respondents/ties CSV files");
  ingest_cmd->add_option("--respondents", ia.respondents, "respondents.csv")->required();
  ingest_cmd->add_option("--ties", ia.ties, "ties.csv")->required();
  ingest_cmd->add_option("--aliases", ia.aliases, "aliases.csv");
  ingest_cmd->add_option("--prune", ia.prune, "none|largest|min:K")->capture_default_str();
  ingest_cmd->add_option("--conflict", ia.conflict, "reject|keep-pre-existing")->capture_default_str();
  ingest_cmd->add_option("--out", ia.out, "output network directory")->required();

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "whole-network, ego and brokerage reports");
  add_common(analyze_cmd, aa.c);
  analyze_cmd->add_flag("--whole", aa.whole, "whole-network measures on the egos (default)");
  analyze_cmd->add_flag("--ego", aa.ego, "per-ego measures");
  analyze_cmd->add_flag("--brokerage", aa.brokerage, "brokerage role counts");
  analyze_cmd->add_option("--select", aa.select, "comma-separated egos for --ego");
  analyze_cmd->add_option("--seed", aa.c.seed, "seed for modularity and core/periphery")->capture_default_str();
  analyze_cmd->add_option("--cp-iterations", aa.c.cp_iterations, "core/periphery restarts")->capture_default_str();
  analyze_cmd->add_option("--format", aa.c.format, "md|csv|json")->capture_default_str();
  analyze_cmd->add_option("--fragmentation-mode", aa.fragmentation_mode, "undirected|directed")->capture_default_str();
  analyze_cmd->add_option("--assortativity-keys", aa.assortativity_keys, "gender,projects,tag:<name>")
      ->capture_default_str();
  analyze_cmd->add_option("--brokerage-grouping", aa.grouping, "projects|gender|tag:<name>")->capture_default_str();
  analyze_cmd->add_option("--project-precedence", aa.precedence, "comma-separated project order");

  EldaArgs ea;
  auto* elda_cmd = app.add_subcommand("elda", "alter-mediated ego linkage");
  add_common(elda_cmd, ea.c);
  elda_cmd->add_option("--top-k", ea.top_k, "ranking length")->capture_default_str();
  elda_cmd->add_option("--emit", ea.emit, "summary|ranking|pairs (repeatable)")
      ->check(CLI::IsMember({"summary", "ranking", "pairs"}))
      ->capture_default_str();
  elda_cmd->add_option("--format", ea.c.format, "md|csv|json")->capture_default_str();

  ExportArgs xa;
  xa.c.format = "graphml";
  auto* export_cmd = app.add_subcommand("export", "write the network as GraphML, DOT or edge CSV");
  add_common(export_cmd, xa.c);
  export_cmd->add_flag("--whole", xa.whole, "egos only");
  export_cmd->add_option("--format", xa.c.format, "graphml|dot|csv")->capture_default_str();

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic community network");
  synth_cmd->add_option("--config", sa.config, "key = value file");
  synth_cmd->add_option("--seed", sa.seed, "overrides the config seed");
  synth_cmd->add_option("--out", sa.out, "output network directory")->required();

  SynthArgs xpa;
  auto* experiment_cmd = app.add_subcommand("experiment", "project-tie intervention experiment");
  experiment_cmd->add_option("--config", xpa.config, "key = value file");
  experiment_cmd->add_option("--seed", xpa.seed, "overrides the config seed");
  experiment_cmd->add_option("--reps", xpa.reps, "replications")->capture_default_str();
  experiment_cmd->add_option("--metric-seed", xpa.metric_seed, "seed for modularity and core/periphery")
      ->capture_default_str();
  experiment_cmd->add_option("--cp-iterations", xpa.cp_iterations, "core/periphery restarts")->capture_default_str();
  experiment_cmd->add_option("--out", xpa.out, "output .csv file or directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (show_codes) {
      std::cout << exit_code_table();
      return 0;
    }
    if (*ingest_cmd) return run_ingest(ia);
    if (*analyze_cmd) return run_analyze(aa);
    if (*elda_cmd) return run_elda(ea);
    if (*export_cmd) return run_export(xa);
    if (*synth_cmd) return run_synth(sa);
    if (*experiment_cmd) return run_experiment(xpa);
    std::cerr << app.help();
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
