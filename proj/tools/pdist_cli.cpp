// pdist: command-line front end for the distance-estimation library.
//
// Exit codes: 0 success, 2 usage or input error, 3 size/cap exceeded,
// 1 anything else (including a failed final-partition search).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "pdist/errors.hpp"
#include "pdist/estimator.hpp"
#include "pdist/final_partition.hpp"
#include "pdist/oracle.hpp"
#include "pdist/properties.hpp"
#include "pdist/regularity.hpp"
#include "pdist/rounding.hpp"
#include "pdist/suite.hpp"

using namespace pdist;

namespace {

PropertySpec load_property(const std::string& name, const std::string& table) {
  if (!table.empty()) return load_truth_table(table);
  return property_by_name(name);
}

void print_signature(const Signature& s) {
  std::cout.precision(10);
  for (int i = 0; i < s.t(); ++i)
    for (int j = i + 1; j < s.t(); ++j) std::cout << "  eta(" << i + 1 << "," << j + 1 << ") = " << s.eta(i, j) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition-based graph distance estimation"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "Run the serial reference kernels");

  // dist-oracle
  auto* dist_cmd = app.add_subcommand("dist-oracle", "Exact distance to a property (n <= 7)");
  std::string dist_input, dist_property = "edgeless", dist_table;
  bool allow_n8 = false;
  dist_cmd->add_option("--input", dist_input, "Graph file")->required();
  dist_cmd->add_option("--property", dist_property, "Built-in property name");
  dist_cmd->add_option("--truth-table", dist_table, "Property truth-table file");
  dist_cmd->add_flag("--allow-n8", allow_n8, "Permit n = 8 (2^28 graphs)");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Close/far verdict for a hereditary property");
  std::string est_input, est_property = "edgeless", est_table;
  EstimatorParams est;
  FinalSearchParams est_search;
  std::uint64_t est_seed = 1;
  std::optional<double> est_mu;
  bool est_sampled = false;
  est_cmd->add_option("--input", est_input, "Graph file")->required();
  est_cmd->add_option("--property", est_property, "Built-in property name");
  est_cmd->add_option("--truth-table", est_table, "Property truth-table file");
  est_cmd->add_option("--alpha", est.alpha, "Distance threshold")->capture_default_str();
  est_cmd->add_option("--eps", est.eps, "Gap")->capture_default_str();
  est_cmd->add_option("--delta", est.delta, "Certificate density threshold")->capture_default_str();
  est_cmd->add_option("--beta", est.beta, "Certificate quantum")->capture_default_str();
  est_cmd->add_option("--cap", est.T, "Extension/certificate size cap T")->capture_default_str();
  est_cmd->add_option("--gamma", est.gamma, "Signature quality")->capture_default_str();
  est_cmd->add_option("--removal-m", est.removal_M, "Forbidden-family vertex cap (0 = smallest violator)");
  est_cmd->add_option("--removal-delta", est.removal_delta, "Certificate threshold override");
  est_cmd->add_option("--removal-n0", est.removal_n0, "Read the whole graph below this n");
  est_cmd->add_option("--seed", est_seed, "Seed")->capture_default_str();
  est_cmd->add_option("--k", est_search.k, "Minimum parts")->capture_default_str();
  est_cmd->add_option("--growth", est_search.growth, "Window multiplier")->capture_default_str();
  est_cmd->add_option("--t-cap", est_search.t_cap, "Largest candidate size")->capture_default_str();
  est_cmd->add_option("--mu", est_mu, "Grid quantum (default: from gamma)");
  est_cmd->add_flag("--sampled", est_sampled, "Use the sampled partition oracle");

  // final-partition
  auto* fin_cmd = app.add_subcommand("final-partition", "Signature search over slab properties");
  std::string fin_input;
  FinalSearchParams fin;
  fin_cmd->add_option("--input", fin_input, "Graph file")->required();
  fin_cmd->add_option("--k", fin.k, "Minimum parts")->capture_default_str();
  fin_cmd->add_option("--gamma", fin.gamma, "Finality slack")->capture_default_str();
  fin_cmd->add_option("--growth", fin.growth, "Window multiplier")->capture_default_str();
  fin_cmd->add_option("--mu", fin.mu, "Grid quantum (1/mu integral)")->capture_default_str();
  fin_cmd->add_option("--t-cap", fin.t_cap, "Largest candidate size")->capture_default_str();

  // regularity
  auto* reg_cmd = app.add_subcommand("regularity", "Irregularity of an equipartition");
  std::string reg_input, reg_parts;
  int reg_t = 0;
  bool reg_star = false, reg_heuristic = false, reg_diagonal = false;
  reg_cmd->add_option("--input", reg_input, "Graph file")->required();
  auto* parts_opt = reg_cmd->add_option("--parts", reg_parts, "Partition file");
  auto* t_opt = reg_cmd->add_option("--t", reg_t, "Use the canonical equipartition into t parts");
  parts_opt->excludes(t_opt);
  reg_cmd->add_flag("--star", reg_star, "Report the block-absolute variant");
  reg_cmd->add_flag("--heuristic", reg_heuristic, "Local search instead of exact enumeration");
  reg_cmd->add_flag("--include-diagonal", reg_diagonal, "Include pairs inside a part");

  // round
  auto* round_cmd = app.add_subcommand("round", "Randomized rounding toward a target signature");
  std::string round_input, round_parts, round_target, round_out;
  std::uint64_t round_seed = 1;
  round_cmd->add_option("--input", round_input, "Graph file")->required();
  round_cmd->add_option("--parts", round_parts, "Partition file")->required();
  round_cmd->add_option("--target", round_target, "Target signature file")->required();
  round_cmd->add_option("--seed", round_seed, "Seed")->capture_default_str();
  round_cmd->add_option("--out", round_out, "Output graph file")->required();

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "Run an experiment scenario");
  SuiteConfig suite;
  std::string suite_out, suite_format = "json";
  suite_cmd->add_option("--scenario", suite.scenario, "oracle-check | rounding-stats | estimate-vs-oracle")->required();
  suite_cmd->add_option("--seed", suite.seed, "Master seed")->capture_default_str();
  suite_cmd->add_option("--instances", suite.instances, "Instance count (0 = scenario default)");
  suite_cmd->add_option("--n", suite.n, "Vertex count for estimate-vs-oracle")->capture_default_str();
  suite_cmd->add_option("--property", suite.property, "Property for estimate-vs-oracle")->capture_default_str();
  suite_cmd->add_option("--out", suite_out, "Output file (default stdout)");
  suite_cmd->add_option("--format", suite_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const Exec exec = serial ? Exec::serial : Exec::parallel;

  try {
    if (*dist_cmd) {
      const Graph g = read_graph_file(dist_input);
      const PropertySpec p = load_property(dist_property, dist_table);
      const std::size_t edits = dist_oracle_edits(g, p, exec, allow_n8);
      std::cout.precision(17);
      std::cout << "property " << p.name << "\nedits " << edits << "\ndistance "
                << static_cast<double>(edits) / (static_cast<double>(g.n()) * g.n()) << '\n';
    } else if (*est_cmd) {
      const Graph g = read_graph_file(est_input);
      const PropertySpec p = load_property(est_property, est_table);
      est.exec = exec;
      est_search.gamma = est.gamma;
      est_search.exec = exec;
      est_search.mu = est_mu ? *est_mu : sandwich_mu(est.gamma, est_search.growth, est_search.t_cap);
      PipelineOptions options;
      options.oracle = est_sampled ? OracleKind::sampled : OracleKind::exact;
      const Verdict v = pipeline_hereditary(g, p, est, est_search, est_seed, options);
      std::cout << "verdict " << case_name(v.verdict) << '\n';
      if (v.shortcut) std::cout << "decided-by whole-graph oracle, distance " << v.oracle_dist << '\n';
      else std::cout << "s_star " << v.s_star << '\n';
      std::cout << "queries_edge " << v.edge_queries << "\nqueries_vertex " << v.vertex_queries << '\n';
      if (v.witness) {
        std::cout << "witness d1 " << v.witness->d1 << "\nextension (" << v.witness->extension.t() << " parts)\n";
        print_signature(v.witness->extension);
        std::cout << "certificate\n";
        print_signature(v.witness->certificate);
      }
    } else if (*fin_cmd) {
      const Graph g = read_graph_file(fin_input);
      fin.exec = exec;
      ExactPartitionOracle oracle(fin.mu, exec);
      const SignatureSearchResult r = signature_search(g, fin, oracle);
      std::cout.precision(12);
      for (std::size_t i = 0; i < r.sizes.size(); ++i) std::cout << "M(" << r.sizes[i] << ") = " << r.m_values[i] << '\n';
      std::cout << "s_star " << r.s_star << "\nsignature\n";
      print_signature(r.signature);
    } else if (*reg_cmd) {
      const Graph g = read_graph_file(reg_input);
      if (reg_parts.empty() && reg_t == 0) throw DomainError("give --parts or --t");
      const Equipartition a = reg_parts.empty() ? canonical_equipartition(g.n(), reg_t) : read_partition_file(reg_parts);
      IrregularityOptions options;
      options.exec = exec;
      options.mode = reg_heuristic ? CutMode::heuristic : CutMode::exact;
      options.diagonal = reg_diagonal ? DiagonalMode::include : DiagonalMode::exclude;
      const Irregularity r = reg_star ? fk_star_irregularity(g, a, options) : fk_irregularity(g, a, options);
      std::cout.precision(17);
      std::cout << (reg_star ? "fk_star " : "fk ") << r.value << (r.exact ? "" : " (lower bound)") << '\n';
      std::cout << "S";
      for (int v : r.s.members()) std::cout << ' ' << v;
      std::cout << "\nT";
      for (int v : r.t.members()) std::cout << ' ' << v;
      std::cout << '\n';
    } else if (*round_cmd) {
      const Graph g = read_graph_file(round_input);
      const Equipartition a = read_partition_file(round_parts);
      const Signature target = read_signature_file(round_target);
      const RoundingReport r = randomized_round(g, a, target, round_seed, exec);
      std::ofstream out(round_out);
      if (!out) throw ParseError("cannot write " + round_out);
      write_graph(out, r.result);
      std::cout << "edits " << r.edits << "\nmax_pair_deviation " << r.per_pair_dev << '\n';
    } else if (*suite_cmd) {
      suite.exec = exec;
      const auto records = run_suite(suite);
      const std::string text = suite_format == "csv" ? records_to_csv(records) : records_to_json(records).dump(2) + "\n";
      if (suite_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(suite_out);
        if (!out) throw ParseError("cannot write " + suite_out);
        out << text;
      }
    }
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
