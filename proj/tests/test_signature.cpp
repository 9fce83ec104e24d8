#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/random.hpp"
#include "pdist/signature.hpp"

using namespace pdist;

namespace {

PartitionProperty uniform_property(int s, double a, double b) {
  const std::size_t p = pair_count(static_cast<std::size_t>(s));
  return {s, std::vector<double>(p, a), std::vector<double>(p, b)};
}

}  // namespace

TEST_SUITE("signature") {
  TEST_CASE("signature storage") {
    Signature s(3);
    s.set(2, 0, 0.4);
    CHECK(s.eta(0, 2) == 0.4);
    CHECK(s.values().size() == 3);
    CHECK_THROWS_AS(Signature(3, {0.1}), DomainError);
    CHECK_THROWS_AS(s.set(1, 1, 0.5), DomainError);
    CHECK_THROWS_AS(s.set(0, 1, 1.5), DomainError);
  }

  TEST_CASE("index of K4 into two parts") {
    const Graph k4 = complete_graph(4);
    const Equipartition a = canonical_equipartition(4, 2);
    CHECK(index_of_partition(k4, a) == doctest::Approx(0.25));
    const Signature z = zero_signature(k4, a);
    CHECK(z.eta(0, 1) == doctest::Approx(1.0));
    CHECK(signature_check(z, a, k4, 0.0, 0.0));
    CHECK(index_of_signature(z) == doctest::Approx(0.25));
  }

  TEST_CASE("signature_check tolerates an eps fraction of bad pairs") {
    const Graph g = random_graph(12, 0.5, 4);
    const Equipartition a = canonical_equipartition(12, 4);
    Signature s = zero_signature(g, a);
    s.set(0, 1, s.eta(0, 1) > 0.5 ? 0.0 : 1.0);
    CHECK_FALSE(signature_check(s, a, g, 0.1, 0.0));
    CHECK(signature_check(s, a, g, 0.1, 1.0 / 6.0));
  }

  TEST_CASE("property distance examples") {
    const Graph k4 = complete_graph(4);
    CHECK(property_distance(k4, uniform_property(2, 1, 1)) == 0.0);
    CHECK(property_distance(k4, uniform_property(2, 0, 0)) == doctest::Approx(0.25));
    Graph c4(4);
    c4.set_edge(0, 2);
    c4.set_edge(0, 3);
    c4.set_edge(1, 2);
    c4.set_edge(1, 3);
    CHECK(property_distance(c4, uniform_property(2, 1, 1)) == 0.0);
  }

  TEST_CASE("property distance matches labeled brute force") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const int n = 4 + static_cast<int>(seed % 4);
      const int s = 2 + static_cast<int>(seed % 2);
      const Graph g = random_graph(n, 0.5, seed);
      Rng rng(seed);
      std::uniform_int_distribution<int> lv(0, 4);
      PartitionProperty pi{s, {}, {}};
      for (std::size_t k = 0; k < pair_count(static_cast<std::size_t>(s)); ++k) {
        const int a = lv(rng);
        pi.alpha.push_back(a / 4.0);
        pi.beta.push_back(std::min(4, a + lv(rng) % 2) / 4.0);
      }
      const double ref = oracle::property_distance(g, pi);
      CHECK(property_distance(g, pi) == doctest::Approx(ref).epsilon(1e-12));
      CHECK(property_distance(g, pi, Exec::serial) == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("property validation and caps") {
    CHECK_THROWS_AS(uniform_property(2, 0.6, 0.4).validate(), DomainError);
    CHECK_THROWS_AS(property_distance(complete_graph(3), uniform_property(4, 0, 1)), DomainError);
    CHECK_THROWS_AS(property_distance(random_graph(16, 0.5, 1), uniform_property(4, 0, 1), Exec::parallel, 1000),
                    SizeError);
  }

  TEST_CASE("grid sizes and order") {
    CHECK(grid_levels(0.25) == 4);
    CHECK_THROWS_AS(grid_levels(0.3), DomainError);
    CHECK(property_grid_size(3, 0.5, GridMode::slab) == 27);
    CHECK(property_grid_size(2, 0.5, GridMode::full) == 6);
    const auto grid = enumerate_property_grid(2, 0.5, GridMode::slab);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0].alpha[0] == 0.0);
    CHECK(grid[2].alpha[0] == 1.0);
    CHECK(grid[2].beta[0] == 1.0);
    CHECK(grid[1].beta[0] == 1.0);
    CHECK_THROWS_AS(enumerate_property_grid(4, 0.1, GridMode::slab, 1000), SizeError);
  }

  TEST_CASE("extension keeps cross densities") {
    const Graph g = random_graph(8, 0.5, 9);
    const Equipartition a = canonical_equipartition(8, 2);
    const Equipartition b(std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3}, 4);
    REQUIRE(is_refinement(b, a));
    const Signature s = zero_signature(g, a);
    const Signature e = extend_signature(s, a, b);
    CHECK(e.t() == 4);
    CHECK(e.eta(0, 2) == s.eta(0, 1));
    CHECK(e.eta(1, 3) == s.eta(0, 1));
  }

  TEST_CASE("signature d1") {
    CHECK(signature_d1(Signature(2, {1.0}), Signature(2, {0.0})) == doctest::Approx(0.25));
    CHECK_THROWS_AS(signature_d1(Signature(2), Signature(3)), DomainError);
  }

  TEST_CASE("signature text round trip") {
    const Signature s(3, {0.1, 1.0 / 3.0, 0.75});
    std::stringstream io;
    write_signature(io, s);
    CHECK(read_signature(io) == s);
    std::istringstream bad("2\n1 1 0.5\n");
    CHECK_THROWS_AS(read_signature(bad), ParseError);
  }
}
