#include <doctest.h>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/homstats.hpp"

using namespace pdist;

namespace {

WeightedGraph half_weight_pair() {
  WeightedGraph r(2);
  r.set(0, 1, 0.5);
  return r;
}

}  // namespace

TEST_SUITE("homstats") {
  TEST_CASE("ind_induced examples") {
    CHECK(ind_induced(complete_graph(2), complete_graph(4)).value == doctest::Approx(0.75));
    CHECK(ind_induced(complete_graph(2), empty_graph(4)).value == 0.0);
    CHECK(ind_induced(complete_graph(2), half_weight_pair()).value == doctest::Approx(0.25));
    CHECK(ind_induced(complete_graph(3), WeightedGraph::from_graph(complete_graph(2))).value == 0.0);
  }

  TEST_CASE("ind_prime examples") {
    CHECK(ind_prime(complete_graph(2), half_weight_pair()).value == doctest::Approx(0.25));
    CHECK(ind_prime(Graph(1), random_weighted_graph(5, 1)).value == doctest::Approx(1.0));
    CHECK(ind_prime(empty_graph(2), WeightedGraph::from_graph(complete_graph(2))).value == doctest::Approx(0.5));
  }

  TEST_CASE("exact densities match the odometer oracle") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const int h = 1 + static_cast<int>(seed % 3);
      const Graph f = random_graph(h, 0.5, seed);
      const auto r = random_weighted_graph(3 + static_cast<int>(seed % 4), seed + 77);
      HomOptions serial;
      serial.exec = Exec::serial;
      CHECK(ind_induced(f, r).value == doctest::Approx(oracle::ind(f, r, true)).epsilon(1e-12));
      CHECK(ind_induced(f, r, serial).value == doctest::Approx(oracle::ind(f, r, true)).epsilon(1e-12));
      CHECK(ind_prime(f, r).value == doctest::Approx(oracle::ind(f, r, false)).epsilon(1e-12));
    }
  }

  TEST_CASE("sampling fallback reports a Chernoff radius") {
    HomOptions o;
    o.exact_cap = 10;
    o.samples = 20000;
    o.seed = 3;
    const auto r = random_weighted_graph(6, 4);
    const DensityEstimate e = ind_induced(complete_graph(2), r, o);
    CHECK_FALSE(e.exact);
    CHECK(e.radius == doctest::Approx(chernoff_radius(20000)));
    CHECK(std::abs(e.value - ind_induced(complete_graph(2), r).value) <= e.radius);
  }

  TEST_CASE("injectivity correction is at most h^2/n") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = random_weighted_graph(6, seed);
      const Graph f = random_graph(3, 0.5, seed);
      CHECK(std::abs(ind_prime(f, r).value - ind_induced(f, r).value) <= 9.0 / 6.0 + 1e-12);
    }
  }

  TEST_CASE("q_statistic examples") {
    CHECK(q_statistic(complete_graph(3), 2).dist.at(1) == doctest::Approx(1.0));
    CHECK(q_statistic(empty_graph(3), 2).dist.at(0) == doctest::Approx(1.0));
    const auto p = q_statistic(path_graph(3), 2).dist;
    CHECK(p.at(1) == doctest::Approx(2.0 / 3.0));
    CHECK(p.at(0) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(q_statistic(path_graph(3), 4), DomainError);
  }

  TEST_CASE("q_statistic matches the brute-force sequence count") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = random_graph(6, 0.4, seed);
      const auto ref = oracle::q_statistic(g, 3);
      const auto got = q_statistic(g, 3).dist;
      CHECK(got.probs.size() == ref.size());
      for (const auto& [code, p] : ref) CHECK(got.at(code) == doctest::Approx(p).epsilon(1e-12));
      HomOptions serial;
      serial.exec = Exec::serial;
      CHECK(q_statistic(g, 3, serial).dist.probs == got.probs);
    }
  }

  TEST_CASE("perceived q_statistic examples") {
    CHECK(perceived_q_statistic(Signature(2, {1.0}), 2).at(1) == doctest::Approx(1.0));
    const auto half = perceived_q_statistic(Signature(2, {0.5}), 2);
    CHECK(half.at(1) == doctest::Approx(0.5));
    CHECK(half.at(0) == doctest::Approx(0.5));
    CHECK(perceived_q_statistic(Signature(3), 2).at(0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(perceived_q_statistic(Signature(2), 3), DomainError);
  }

  TEST_CASE("perceived statistic matches brute-force mass") {
    const Signature s(4, {0.1, 0.5, 0.9, 0.25, 0.75, 0.0});
    const auto mu = perceived_q_statistic(s, 3);
    mu.check();
    for (std::uint64_t code = 0; code < 8; ++code)
      CHECK(mu.at(code) == doctest::Approx(oracle::perceived_mass(s.as_weighted_graph(), 3, {code})).epsilon(1e-12));
  }
}
