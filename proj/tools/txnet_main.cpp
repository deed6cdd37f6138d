// txnet command-line tool: build transaction graphs, sample them, compute
// the network-metric suite, and score sampler fidelity. Every command is
// deterministic given its flags and writes a replay manifest next to its
// primary output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "txnet/evaluation.hpp"
#include "txnet/graph.hpp"
#include "txnet/ingest.hpp"
#include "txnet/metrics.hpp"
#include "txnet/report_io.hpp"
#include "txnet/rng.hpp"
#include "txnet/sampling.hpp"
#include "txnet/version.hpp"

namespace {

using nlohmann::json;
using namespace txnet;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Size: return 3;
    case ErrorKind::Io: return 4;
    default: return 2;
  }
}

// Missing input files are usage errors (exit 2); IoError (exit 4) is kept
// for failures on files that exist.
void require_input(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw ConfigError("input file not found: '" + path + "'");
}

void write_manifest(const std::filesystem::path& primary_output, const std::string& command,
                    const json& options) {
  json manifest;
  manifest["command"] = command;
  manifest["options"] = options;
  manifest["rng"] = Rng::kAlgorithmId;
  manifest["version"] = kVersion;
  std::ofstream out(primary_output.string() + ".manifest.json", std::ios::trunc);
  if (!out) throw IoError("cannot write manifest for '" + primary_output.string() + "'");
  out << manifest.dump(2) << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) values.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.empty()) throw ConfigError("empty value list");
  return values;
}

// ---------------------------------------------------------------- ingest --

struct IngestArgs {
  std::string tx_file;
  std::string format = "jsonl";
  std::string out;
};

int cmd_ingest(const IngestArgs& args) {
  require_input(args.tx_file);
  const ingest::TxFormat format = args.format == "csv" ? ingest::TxFormat::Csv
                                  : args.format == "jsonl"
                                      ? ingest::TxFormat::Jsonl
                                      : throw ConfigError("format must be jsonl or csv");
  GraphAssembler assembler;
  const ingest::IngestStats stats = ingest::parse_transactions(
      args.tx_file, format, [&](TransactionRecord&& tx) { assembler.add_transaction(tx); });
  const WeightedDigraph g = assembler.build();
  ingest::write_edge_list(g, args.out);

  json options{{"tx_file", args.tx_file}, {"format", args.format}, {"out", args.out}};
  write_manifest(args.out, "ingest", options);

  json report{{"transactions_read", stats.transactions_read},
              {"transactions_rejected", stats.transactions_rejected},
              {"edges_emitted", stats.edges_emitted},
              {"distinct_addresses", stats.distinct_addresses},
              {"warnings", stats.warnings},
              {"graph", {{"nodes", g.node_count()}, {"edges", g.edge_count()}}}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- sample --

struct SampleArgs {
  std::string graph;
  std::string method = "rwfb";
  std::size_t nodes = 0;
  double p = 0.3;
  double ff_forward_prob = 0.7;
  std::size_t sb_depth = 2;
  std::uint64_t seed = 0;
  std::string restart_policy = "restart_to_start";
  std::string subgraph = "induced";
  std::string out;
};

sampling::SamplerConfig sampler_config(const SampleArgs& args) {
  sampling::SamplerConfig cfg;
  cfg.method = sampling::method_from_name(args.method);
  cfg.target_nodes = args.nodes;
  cfg.p = args.p;
  cfg.ff_forward_prob = args.ff_forward_prob;
  cfg.sb_depth = args.sb_depth;
  cfg.seed = args.seed;
  if (args.restart_policy == "restart_to_start")
    cfg.restart_policy = sampling::RestartPolicy::RestartToStart;
  else if (args.restart_policy == "stay_at_current")
    cfg.restart_policy = sampling::RestartPolicy::StayAtCurrent;
  else
    throw ConfigError("restart-policy must be restart_to_start or stay_at_current");
  if (args.subgraph == "induced")
    cfg.subgraph_mode = sampling::SubgraphMode::Induced;
  else if (args.subgraph == "traversed")
    cfg.subgraph_mode = sampling::SubgraphMode::TraversedEdges;
  else
    throw ConfigError("subgraph must be induced or traversed");
  return cfg;
}

json sampler_config_json(const SampleArgs& args) {
  json doc = to_json(sampler_config(args));
  doc["graph"] = args.graph;
  doc["out"] = args.out;
  return doc;
}

int cmd_sample(const SampleArgs& args) {
  require_input(args.graph);
  const WeightedDigraph g = ingest::read_edge_list(args.graph);
  const sampling::SamplerConfig cfg = sampler_config(args);
  const sampling::SampleResult result = sampling::sample(g, cfg);
  ingest::write_edge_list(result.subgraph, args.out);
  write_manifest(args.out, "sample", sampler_config_json(args));

  json summary{{"nodes", result.subgraph.node_count()},
               {"edges", result.subgraph.edge_count()},
               {"restarts", result.restarts},
               {"steps_taken", result.steps_taken}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------- metrics --

struct MetricsArgs {
  std::string graph;
  std::string report;
  bool exact = false;
  std::size_t pivots = 0;
  std::uint64_t seed = 0;
  std::size_t omega_replicates = 5;
  std::size_t richclub_replicates = 5;
  std::string csv_dir;
  bool skip_per_node = false;
};

int cmd_metrics(const MetricsArgs& args) {
  require_input(args.graph);
  const WeightedDigraph g = ingest::read_edge_list(args.graph);

  metrics::ReportOptions options;
  if (args.exact && args.pivots > 0) throw ConfigError("--exact and --pivots are exclusive");
  if (args.exact) {
    options.approx = metrics::Approx::exact_mode();
    if (g.node_count() > metrics::kExactNodeCap)
      throw GraphTooLargeForExact(g.node_count(), metrics::kExactNodeCap);
  } else if (args.pivots > 0) {
    options.approx = metrics::Approx::pivot(args.pivots, args.seed);
  } else {
    options.approx = metrics::Approx::auto_mode(g.node_count(), 2000, args.seed);
  }
  options.omega_replicates = args.omega_replicates;
  options.richclub_replicates = args.richclub_replicates;
  options.seed = args.seed;
  options.include_per_node = !args.skip_per_node;

  const metrics::MetricReport report = metrics::full_report(g, options);

  json doc = to_json(report);
  doc["meta"] = {{"version", kVersion},
                 {"rng", Rng::kAlgorithmId},
                 {"graph_file", args.graph},
                 {"exact", options.approx.exact},
                 {"pivots", options.approx.exact ? 0 : options.approx.sources},
                 {"seed", args.seed},
                 {"omega_replicates", args.omega_replicates},
                 {"richclub_replicates", args.richclub_replicates}};

  std::ofstream out(args.report, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + args.report + "'");
  out << doc.dump(2) << "\n";
  out.close();

  if (!args.csv_dir.empty()) write_series_csv(args.csv_dir, report.series);

  json options_json{{"graph", args.graph},
                    {"report", args.report},
                    {"exact", args.exact},
                    {"pivots", args.pivots},
                    {"seed", args.seed},
                    {"omega_replicates", args.omega_replicates},
                    {"richclub_replicates", args.richclub_replicates},
                    {"csv_dir", args.csv_dir},
                    {"skip_per_node", args.skip_per_node}};
  write_manifest(args.report, "metrics", options_json);

  std::cout << "report written to " << args.report << "\n";
  return 0;
}

// --------------------------------------------------------------- compare --

struct CompareArgs {
  std::string graph;
  std::string methods = "rwfb,rws,rn,re,ff,sb";
  std::size_t nodes = 0;
  std::string seeds = "1";
  double p = 0.3;
  bool kernel = false;
  std::size_t kernel_cap = 2000;
  std::size_t pivots = 0;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) names.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return names;
}

int cmd_compare(const CompareArgs& args) {
  require_input(args.graph);
  const WeightedDigraph g = ingest::read_edge_list(args.graph);
  const std::vector<std::string> methods = split_names(args.methods);
  if (methods.empty()) throw ConfigError("empty method list");
  const std::vector<std::uint64_t> seeds = parse_seed_list(args.seeds);

  const metrics::Approx approx =
      args.pivots > 0 ? metrics::Approx::pivot(args.pivots, args.seed)
                      : metrics::Approx::auto_mode(g.node_count(), 2000, args.seed);
  const eval::MetricVectors reference = eval::fidelity_vectors(g, approx);

  eval::KernelConfig kcfg;
  kcfg.size_cap = args.kernel_cap;
  eval::KernelProfile ref_profile;
  if (args.kernel)
    ref_profile =
        eval::kernel_profile(eval::kernel_capped(g, args.kernel_cap, eval::kKernelRefSeed), kcfg);

  struct Row {
    std::string method;
    std::string seed;
    eval::FidelityScore score;
  };
  std::vector<Row> rows;
  std::vector<Row> aggregates;

  for (const std::string& name : methods) {
    const sampling::Method method = sampling::method_from_name(name);
    eval::FidelityScore mean_score;
    double kernel_sum = 0.0;
    for (const std::uint64_t seed : seeds) {
      sampling::SamplerConfig cfg;
      cfg.method = method;
      cfg.target_nodes = args.nodes;
      cfg.p = args.p;
      cfg.seed = seed;
      const WeightedDigraph sampled_graph = sampling::sample(g, cfg).subgraph;
      eval::FidelityScore score = eval::fidelity_against(reference, sampled_graph, approx);
      if (args.kernel) {
        const eval::KernelProfile sample_profile = eval::kernel_profile(
            eval::kernel_capped(sampled_graph, args.kernel_cap, eval::kKernelRefSeed), kcfg);
        score.kernel = eval::kernel_normalized_from_profiles(sample_profile, ref_profile, kcfg);
        score.kernel_cap = args.kernel_cap;
        score.kernel_ref_seed = eval::kKernelRefSeed;
        kernel_sum += *score.kernel;
      }
      mean_score.d_degree += score.d_degree;
      mean_score.d_clustering += score.d_clustering;
      mean_score.d_betweenness += score.d_betweenness;
      mean_score.d_closeness += score.d_closeness;
      mean_score.d_avg += score.d_avg;
      rows.push_back({name, std::to_string(seed), score});
    }
    const double count = static_cast<double>(seeds.size());
    mean_score.d_degree /= count;
    mean_score.d_clustering /= count;
    mean_score.d_betweenness /= count;
    mean_score.d_closeness /= count;
    mean_score.d_avg /= count;
    if (args.kernel) mean_score.kernel = kernel_sum / count;
    aggregates.push_back({name, "mean", mean_score});
  }

  // Best aggregate per column: smallest D, largest kernel (Table-style bolding).
  std::map<std::string, std::string> best;
  auto pick = [&](const std::string& column, auto getter, bool smaller_is_better) {
    double best_value = smaller_is_better ? 1e300 : -1e300;
    for (const Row& row : aggregates) {
      const double v = getter(row.score);
      if (smaller_is_better ? v < best_value : v > best_value) best_value = v;
    }
    for (Row& row : aggregates)
      if (getter(row.score) == best_value) {
        auto& marks = best[row.method];
        if (!marks.empty()) marks += ';';
        marks += column;
      }
  };
  pick("degree", [](const eval::FidelityScore& s) { return s.d_degree; }, true);
  pick("clustering", [](const eval::FidelityScore& s) { return s.d_clustering; }, true);
  pick("betweenness", [](const eval::FidelityScore& s) { return s.d_betweenness; }, true);
  pick("closeness", [](const eval::FidelityScore& s) { return s.d_closeness; }, true);
  pick("avg", [](const eval::FidelityScore& s) { return s.d_avg; }, true);
  if (args.kernel)
    pick("kernel", [](const eval::FidelityScore& s) { return s.kernel.value_or(-1e300); }, false);

  std::ofstream out(args.out, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + args.out + "'");
  out << "method,seed,d_degree,d_clustering,d_betweenness,d_closeness,d_avg,kernel,row,best\n";
  auto emit = [&](const Row& row, const char* kind, const std::string& marks) {
    out << row.method << ',' << row.seed << ',' << fmt(row.score.d_degree) << ','
        << fmt(row.score.d_clustering) << ',' << fmt(row.score.d_betweenness) << ','
        << fmt(row.score.d_closeness) << ',' << fmt(row.score.d_avg) << ','
        << (row.score.kernel ? fmt(*row.score.kernel) : std::string()) << ',' << kind << ','
        << marks << '\n';
  };
  for (const Row& row : rows) emit(row, "run", "");
  for (const Row& row : aggregates) emit(row, "mean", best[row.method]);
  out.close();

  json options{{"graph", args.graph}, {"methods", args.methods}, {"nodes", args.nodes},
               {"seeds", args.seeds}, {"p", args.p},             {"kernel", args.kernel},
               {"kernel_cap", args.kernel_cap}, {"pivots", args.pivots}, {"seed", args.seed},
               {"out", args.out}};
  write_manifest(args.out, "compare", options);

  std::cout << "comparison written to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- psweep --

struct PsweepArgs {
  std::string graph;
  std::string p_grid = "0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::size_t nodes = 0;
  std::string seeds = "1";
  std::size_t kernel_cap = 2000;
  std::string out;
};

int cmd_psweep(const PsweepArgs& args) {
  require_input(args.graph);
  const WeightedDigraph g = ingest::read_edge_list(args.graph);
  eval::PSweepConfig cfg;
  cfg.target_nodes = args.nodes;
  cfg.seeds = parse_seed_list(args.seeds);
  cfg.kernel.size_cap = args.kernel_cap;
  const std::vector<double> grid = parse_double_list(args.p_grid);

  const std::vector<eval::SweepPoint> series = eval::p_sweep(g, grid, cfg);

  std::ofstream out(args.out, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + args.out + "'");
  out << "p,mean_kernel,std_error,seeds\n";
  for (const auto& pt : series)
    out << fmt(pt.p) << ',' << fmt(pt.mean_kernel) << ',' << fmt(pt.std_error) << ','
        << pt.seeds << '\n';
  out.close();

  const auto peak = std::max_element(
      series.begin(), series.end(),
      [](const eval::SweepPoint& a, const eval::SweepPoint& b) {
        return a.mean_kernel < b.mean_kernel;
      });
  json options{{"graph", args.graph},   {"p_grid", args.p_grid},
               {"nodes", args.nodes},   {"seeds", args.seeds},
               {"kernel_cap", args.kernel_cap}, {"out", args.out}};
  write_manifest(args.out, "psweep", options);

  std::cout << "peak p=" << fmt(peak->p) << " mean_kernel=" << fmt(peak->mean_kernel) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transaction-graph sampling and complex-network analysis"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "build an edge list from a transaction dump");
  ingest_cmd->add_option("--tx-file", ingest_args.tx_file, "transaction dump")->required();
  ingest_cmd->add_option("--format", ingest_args.format, "jsonl or csv");
  ingest_cmd->add_option("--out", ingest_args.out, "output edge list")->required();

  SampleArgs sample_args;
  CLI::App* sample_cmd = app.add_subcommand("sample", "sample a graph down to a target size");
  sample_cmd->add_option("--graph", sample_args.graph, "input edge list")->required();
  sample_cmd->add_option("--method", sample_args.method, "rwfb|rws|rn|re|ff|sb");
  sample_cmd->add_option("--nodes", sample_args.nodes, "target node count")->required();
  sample_cmd->add_option("--p", sample_args.p, "flying-back probability");
  sample_cmd->add_option("--ff-forward-prob", sample_args.ff_forward_prob, "forest-fire burn probability");
  sample_cmd->add_option("--sb-depth", sample_args.sb_depth, "snowball depth");
  sample_cmd->add_option("--seed", sample_args.seed, "random seed");
  sample_cmd->add_option("--restart-policy", sample_args.restart_policy,
                         "restart_to_start|stay_at_current");
  sample_cmd->add_option("--subgraph", sample_args.subgraph, "induced|traversed");
  sample_cmd->add_option("--out", sample_args.out, "output edge list")->required();

  MetricsArgs metrics_args;
  CLI::App* metrics_cmd = app.add_subcommand("metrics", "compute the full metric report");
  metrics_cmd->add_option("--graph", metrics_args.graph, "input edge list")->required();
  metrics_cmd->add_option("--report", metrics_args.report, "output JSON report")->required();
  metrics_cmd->add_flag("--exact", metrics_args.exact, "force exact all-pairs mode");
  metrics_cmd->add_option("--pivots", metrics_args.pivots, "pivot sources for approximations");
  metrics_cmd->add_option("--seed", metrics_args.seed, "random seed");
  metrics_cmd->add_option("--omega-replicates", metrics_args.omega_replicates,
                          "null-model replicates for omega");
  metrics_cmd->add_option("--richclub-replicates", metrics_args.richclub_replicates,
                          "rewiring replicates for the normalized rich club");
  metrics_cmd->add_option("--csv-dir", metrics_args.csv_dir, "directory for series CSV exports");
  metrics_cmd->add_flag("--skip-per-node", metrics_args.skip_per_node,
                        "omit per-node vectors from the report");

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand("compare", "score sampling methods against the graph");
  compare_cmd->add_option("--graph", compare_args.graph, "input edge list")->required();
  compare_cmd->add_option("--methods", compare_args.methods, "comma-separated method list");
  compare_cmd->add_option("--nodes", compare_args.nodes, "sample size")->required();
  compare_cmd->add_option("--seeds", compare_args.seeds, "comma-separated seed list");
  compare_cmd->add_option("--p", compare_args.p, "RWFB flying-back probability");
  compare_cmd->add_flag("--kernel", compare_args.kernel, "also compute the normalized graph kernel");
  compare_cmd->add_option("--kernel-cap", compare_args.kernel_cap, "kernel size cap");
  compare_cmd->add_option("--pivots", compare_args.pivots, "pivot sources for the reference metrics");
  compare_cmd->add_option("--seed", compare_args.seed, "seed for pivot sampling");
  compare_cmd->add_option("--out", compare_args.out, "output CSV")->required();

  PsweepArgs psweep_args;
  CLI::App* psweep_cmd = app.add_subcommand("psweep", "sweep the flying-back probability");
  psweep_cmd->add_option("--graph", psweep_args.graph, "input edge list")->required();
  psweep_cmd->add_option("--p-grid", psweep_args.p_grid, "comma-separated p values");
  psweep_cmd->add_option("--nodes", psweep_args.nodes, "sample size")->required();
  psweep_cmd->add_option("--seeds", psweep_args.seeds, "comma-separated seed list");
  psweep_cmd->add_option("--kernel-cap", psweep_args.kernel_cap, "kernel size cap");
  psweep_cmd->add_option("--out", psweep_args.out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(ingest_args);
    if (sample_cmd->parsed()) return cmd_sample(sample_args);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_args);
    if (compare_cmd->parsed()) return cmd_compare(compare_args);
    if (psweep_cmd->parsed()) return cmd_psweep(psweep_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
