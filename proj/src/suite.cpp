#include "pdist/suite.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "pdist/errors.hpp"
#include "pdist/estimator.hpp"
#include "pdist/graph.hpp"
#include "pdist/metrics.hpp"
#include "pdist/oracle.hpp"
#include "pdist/random.hpp"
#include "pdist/rounding.hpp"

namespace pdist {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<ExperimentRecord> oracle_check(const SuiteConfig& config) {
  struct Fixture {
    const char* name;
    Graph g;
    PropertySpec p;
  };
  const std::vector<Fixture> fixtures = {
      {"K3", complete_graph(3), triangle_free_property()},
      {"C5", cycle_graph(5), bipartite_property()},
      {"K4", complete_graph(4), edgeless_property()},
  };
  std::vector<ExperimentRecord> out;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto start = Clock::now();
    const auto& f = fixtures[i];
    const double dist = dist_oracle(f.g, f.p, config.exec);
    ExperimentRecord r;
    r.id = "oracle-check-" + std::to_string(i);
    r.seed = derive_seed(config.seed, i);
    r.params = {{"graph", f.name}, {"property", f.p.name}, {"n", f.g.n()}};
    r.verdict = f.p.predicate(f.g) ? "member" : "non-member";
    r.oracle_dist = dist;
    r.queries_edge = pair_count(static_cast<std::size_t>(f.g.n()));
    r.queries_vertex = static_cast<std::uint64_t>(f.g.n());
    r.wall_ms = ms_since(start);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> rounding_stats(const SuiteConfig& config) {
  const int count = config.instances > 0 ? config.instances : 200;
  const int n = 120, t = 3;
  const Graph g = random_graph(n, 0.5, derive_seed(config.seed, 0xF1));
  const Equipartition a = canonical_equipartition(n, t);
  const Signature s = zero_signature(g, a);
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto start = Clock::now();
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    Signature target(t);
    for (int p = 0; p < t; ++p)
      for (int q = p + 1; q < t; ++q)
        target.set(p, q, counter_uniform({seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q)}));
    const RoundingReport rep = randomized_round(g, a, target, seed, config.exec);
    const double dist = edit_distance(g, rep.result);
    const double delta = signature_d1(s, target);
    ExperimentRecord& r = out[static_cast<std::size_t>(i)];
    r.id = "rounding-stats-" + std::to_string(i);
    r.seed = seed;
    r.params = {{"n", n}, {"t", t}, {"eps", config.eps}, {"edit_distance", dist}, {"d1", delta},
                {"per_pair_dev", rep.per_pair_dev}, {"edits", rep.edits}};
    r.verdict = dist <= delta + config.eps ? "within-bound" : "over-bound";
    r.queries_edge = pair_count(static_cast<std::size_t>(n));
    r.queries_vertex = static_cast<std::uint64_t>(n);
    r.wall_ms = ms_since(start);
  }
  return out;
}

std::vector<ExperimentRecord> estimate_vs_oracle(const SuiteConfig& config) {
  const int count = config.instances > 0 ? config.instances : 100;
  if (config.n < 2 || config.n > 7) throw DomainError("estimate-vs-oracle needs 2 <= n <= 7");
  const PropertySpec p = property_by_name(config.property);
  EstimatorParams params;
  params.alpha = config.alpha;
  params.eps = config.eps;
  params.exec = config.exec;
  FinalSearchParams search;
  search.k = 2;
  search.t_cap = 2;
  search.mu = sandwich_mu(search.gamma, search.growth, search.t_cap);
  search.exec = config.exec;
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto start = Clock::now();
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    const double density = counter_uniform({seed, 0xD}) * 0.5;
    const Graph g = random_graph(config.n, density, seed);
    const Verdict v = pipeline_hereditary(g, p, params, search, seed);
    ExperimentRecord& r = out[static_cast<std::size_t>(i)];
    r.id = "estimate-vs-oracle-" + std::to_string(i);
    r.seed = seed;
    r.params = {{"n", config.n}, {"property", p.name}, {"alpha", params.alpha}, {"eps", params.eps},
                {"edge_density", density}, {"s_star", v.s_star}, {"shortcut", v.shortcut}};
    r.verdict = case_name(v.verdict);
    r.oracle_dist = dist_oracle(g, p, config.exec);
    r.queries_edge = v.edge_queries;
    r.queries_vertex = v.vertex_queries;
    r.wall_ms = ms_since(start);
  }
  return out;
}

std::string csv_cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

}  // namespace

std::vector<std::string> scenario_names() { return {"oracle-check", "rounding-stats", "estimate-vs-oracle"}; }

std::vector<ExperimentRecord> run_suite(const SuiteConfig& config) {
  if (config.instances < 0) throw DomainError("instances must be nonnegative");
  if (config.scenario == "oracle-check") return oracle_check(config);
  if (config.scenario == "rounding-stats") return rounding_stats(config);
  if (config.scenario == "estimate-vs-oracle") return estimate_vs_oracle(config);
  throw DomainError("unknown scenario '" + config.scenario + "'");
}

nlohmann::json records_to_json(const std::vector<ExperimentRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records)
    out.push_back({{"id", r.id}, {"seed", r.seed}, {"params", r.params}, {"verdict", r.verdict},
                   {"oracle_dist", r.oracle_dist}, {"queries_edge", r.queries_edge},
                   {"queries_vertex", r.queries_vertex}, {"wall_ms", r.wall_ms}});
  return out;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::set<std::string> keys;
  for (const auto& r : records)
    for (const auto& [k, v] : r.params.items()) keys.insert(k);
  std::ostringstream out;
  out << "id,seed";
  for (const auto& k : keys) out << ",params." << k;
  out << ",verdict,oracle_dist,queries_edge,queries_vertex,wall_ms\n";
  out.precision(17);
  for (const auto& r : records) {
    out << csv_cell(r.id) << ',' << r.seed;
    for (const auto& k : keys) out << ',' << (r.params.contains(k) ? csv_cell(r.params[k]) : std::string());
    out << ',' << csv_cell(r.verdict) << ',' << r.oracle_dist << ',' << r.queries_edge << ',' << r.queries_vertex
        << ',' << r.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace pdist
