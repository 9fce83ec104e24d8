#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/oracle.hpp"
#include "pdist/properties.hpp"
#include "pdist/suite.hpp"

using namespace pdist;

TEST_SUITE("harness") {
  TEST_CASE("property predicates") {
    CHECK(edgeless_property().predicate(empty_graph(5)));
    CHECK_FALSE(triangle_free_property().predicate(complete_graph(3)));
    CHECK(bipartite_property().predicate(cycle_graph(6)));
    CHECK_FALSE(bipartite_property().predicate(cycle_graph(5)));
    CHECK_FALSE(p4_free_property().predicate(path_graph(4)));
    CHECK(p4_free_property().predicate(cycle_graph(4)));
    CHECK_FALSE(clique_free_property(4).predicate(complete_graph(4)));
    CHECK(property_by_name("k4-free").predicate(complete_graph(3)));
    CHECK_THROWS_AS(property_by_name("planar"), DomainError);
    CHECK(builtin_property_names().size() >= 4);
  }

  TEST_CASE("dist oracle fixtures") {
    CHECK(dist_oracle(complete_graph(4), edgeless_property()) == doctest::Approx(6.0 / 16.0));
    CHECK(dist_oracle(complete_graph(3), triangle_free_property()) == doctest::Approx(1.0 / 9.0));
    CHECK(dist_oracle(cycle_graph(5), bipartite_property()) == doctest::Approx(1.0 / 25.0));
    CHECK(dist_oracle(path_graph(4), p4_free_property()) == doctest::Approx(1.0 / 16.0));
    CHECK_THROWS_AS(dist_oracle(empty_graph(8), edgeless_property()), SizeError);
  }

  TEST_CASE("dist oracle matches edit-subset brute force") {
    const std::vector<PropertySpec> props{triangle_free_property(), bipartite_property(), p4_free_property()};
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Graph g = random_graph(5, 0.5, seed);
      for (const auto& p : props) {
        const double ref = oracle::dist(g, p.predicate);
        CHECK(dist_oracle(g, p) == doctest::Approx(ref));
        CHECK(dist_oracle(g, p, Exec::serial) == doctest::Approx(ref));
      }
    }
  }

  TEST_CASE("canonical tester counts queries") {
    const Graph g = complete_graph(10);
    QueryCountingOracle o(g);
    CHECK_FALSE(canonical_test(o, triangle_free_property(), 4, 1));
    CHECK(o.edge_queries() == 6);
    CHECK(o.distinct_queries() == 6);
    CHECK(o.vertex_queries() == 4);
    o.reset();
    CHECK(o.edge_queries() == 0);
    QueryCountingOracle e(empty_graph(10));
    CHECK(canonical_test(e, edgeless_property(), 10, 2));
    CHECK_THROWS_AS(canonical_test(e, edgeless_property(), 11, 2), DomainError);
    PropertySpec loose{"loose", [](const Graph&) { return true; }, false};
    CHECK_THROWS_AS(canonical_test(e, loose, 3, 2), DomainError);
  }

  TEST_CASE("truth tables") {
    // Graphs on 3 vertices with at most one edge.
    std::istringstream in("3 hereditary\n0\n1\n2\n4\n");
    const PropertySpec p = read_truth_table(in, "sparse3");
    CHECK(p.hereditary);
    CHECK(p.predicate(Graph::from_code(3, 2)));
    CHECK_FALSE(p.predicate(Graph::from_code(3, 3)));
    CHECK(dist_oracle(complete_graph(3), p) == doctest::Approx(2.0 / 9.0));
    std::istringstream bad("3\nx\n");
    CHECK_THROWS_AS(read_truth_table(bad, "bad"), ParseError);
  }

  TEST_CASE("hereditary spot check") {
    const std::vector<Graph> samples{complete_graph(4), cycle_graph(5), empty_graph(3)};
    CHECK(spot_check_hereditary(triangle_free_property(), samples));
    PropertySpec weird{"has-edge", [](const Graph& g) { return g.edge_count() > 0; }, false};
    const std::vector<Graph> one{complete_graph(2)};
    CHECK_FALSE(spot_check_hereditary(weird, one));
  }

  TEST_CASE("forbidden families") {
    CHECK(forbidden_family(edgeless_property(), 3).size() == 1 + 3);
    CHECK(smallest_violator_size(triangle_free_property()) == 3);
    CHECK(smallest_violator_size(p4_free_property()) == 4);
    CHECK(forbidden_family(triangle_free_property(), 3).size() == 1);
    CHECK(canonical_code(path_graph(3)) == canonical_code(Graph::from_code(3, 3)));
  }

  TEST_CASE("suite records") {
    SuiteConfig c;
    c.scenario = "oracle-check";
    c.instances = 3;
    c.n = 5;
    const auto records = run_suite(c);
    REQUIRE(records.size() == 3);
    const auto j = records_to_json(records);
    for (const char* key : {"id", "seed", "params", "verdict", "oracle_dist", "queries_edge", "queries_vertex", "wall_ms"})
      CHECK(j[0].contains(key));
    const std::string csv = records_to_csv(records);
    CHECK(csv.rfind("id,seed,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    c.scenario = "nope";
    CHECK_THROWS_AS(run_suite(c), DomainError);
  }

  TEST_CASE("suite is reproducible") {
    SuiteConfig c;
    c.scenario = "estimate-vs-oracle";
    c.instances = 2;
    c.n = 6;
    const auto a = run_suite(c), b = run_suite(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].verdict == b[k].verdict);
      CHECK(a[k].oracle_dist == b[k].oracle_dist);
      CHECK(a[k].params == b[k].params);
    }
  }
}
