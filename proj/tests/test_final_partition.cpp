#include <doctest.h>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/final_partition.hpp"

using namespace pdist;

namespace {

FinalSearchParams small_params(double mu, int t_cap, double gamma) {
  FinalSearchParams p;
  p.mu = mu;
  p.t_cap = t_cap;
  p.gamma = gamma;
  return p;
}

}  // namespace

TEST_SUITE("final-partition") {
  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(small_params(0.3, 2, 0.1).validate(), DomainError);
    FinalSearchParams p;
    p.k = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK(sandwich_mu(0.1, 2, 2) == doctest::Approx(1.0 / 7680.0));
    CHECK(sandwich_mu(0.9, 1, 1) == doctest::Approx(1.0 / 54.0));
  }

  TEST_CASE("max index examples") {
    CHECK(max_index(complete_graph(6), 2).value == doctest::Approx(0.25));
    CHECK(max_index(empty_graph(6), 3).value == 0.0);
    CHECK(max_index(complete_graph(6), 3).value == doctest::Approx(3.0 / 9.0));
  }

  TEST_CASE("max index matches the labeled brute force") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int n = 5 + static_cast<int>(seed % 4);
      const int s = 2 + static_cast<int>(seed % 3);
      const Graph g = random_graph(n, 0.5, seed);
      const double ref = oracle::max_index(g, s);
      const IndexMax m = max_index(g, s);
      CHECK(m.value == doctest::Approx(ref).epsilon(1e-12));
      CHECK(max_index(g, s, Exec::serial).value == doctest::Approx(ref).epsilon(1e-12));
      CHECK(index_of_partition(g, m.arg) == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("finality") {
    const Graph g = complete_graph(8);
    FinalSearchParams p = small_params(0.25, 2, 0.1);
    CHECK(is_final(g, canonical_equipartition(8, 4), p));
    CHECK_FALSE(is_final(g, canonical_equipartition(8, 1), p));
    const FinalResult r = find_final(g, p);
    CHECK(is_final(g, r.partition, p));
    CHECK(r.partition.t() >= p.k);
    CHECK(r.rounds <= 20);
  }

  TEST_CASE("find_final on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = random_graph(8, 0.5, seed);
      const FinalSearchParams p = small_params(0.25, 2, 0.05);
      const FinalResult r = find_final(g, p);
      CHECK(is_final(g, r.partition, p));
      CHECK(r.rounds <= 40);
    }
  }

  TEST_CASE("knapsack slab maximum matches the grid walk") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const int n = 5 + static_cast<int>(seed % 3);
      const int s = 2 + static_cast<int>(seed % 2);
      const int L = 2 + static_cast<int>(seed % 3);
      const Graph g = random_graph(n, 0.5, seed + 40);
      const auto [ref, ref_alpha] = oracle::slab_max(g, s, L);
      const SlabMax m = exact_slab_max(g, s, 1.0 / L);
      CHECK(m.value == doctest::Approx(ref).epsilon(1e-12));
      CHECK(m.property.alpha == ref_alpha);
      CHECK(exact_slab_max(g, s, 1.0 / L, Exec::serial).value == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("fast path and grid strategy agree") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const Graph g = random_graph(6, 0.5, seed + 7);
      FinalSearchParams p = small_params(0.5, 2, 0.9);
      ExactPartitionOracle fast(p.mu);
      const SignatureSearchResult a = signature_search(g, p, fast);
      p.strategy = SlabStrategy::grid;
      ExactPartitionOracle slow(p.mu);
      const SignatureSearchResult b = signature_search(g, p, slow);
      CHECK(a.s_star == b.s_star);
      CHECK(a.m_values == b.m_values);
      CHECK(a.signature == b.signature);
      CHECK(fast.edge_queries() == 15);
      CHECK(b.oracle_calls > 0);
    }
  }

  TEST_CASE("search on the empty graph") {
    const FinalSearchParams p = small_params(0.25, 2, 0.9);
    ExactPartitionOracle oracle(p.mu);
    const SignatureSearchResult r = signature_search(empty_graph(8), p, oracle);
    CHECK(r.s_star == 2);
    // Missing edges cost less than mu up to level 3/4.
    CHECK(r.signature.eta(0, 1) == 0.75);
    CHECK(r.m_values.front() == doctest::Approx(0.75 * 0.75 / 4.0));
    CHECK(r.m_values.front() == doctest::Approx(oracle::slab_max(empty_graph(8), 2, 4).first));
    CHECK(r.sizes == std::vector<int>{2, 3, 4});
  }

  TEST_CASE("search on K4") {
    const FinalSearchParams p = small_params(0.5, 2, 0.9);
    ExactPartitionOracle oracle(p.mu);
    const SignatureSearchResult r = signature_search(complete_graph(4), p, oracle);
    CHECK(r.s_star == 2);
    CHECK(r.signature.eta(0, 1) == 1.0);
  }

  TEST_CASE("search on a complete bipartite blowup") {
    const std::vector<int> sizes{4, 4};
    const Graph g = blowup(complete_graph(2), sizes, {false, false});
    const FinalSearchParams p = small_params(0.25, 2, 0.9);
    ExactPartitionOracle oracle(p.mu);
    const SignatureSearchResult r = signature_search(g, p, oracle);
    CHECK(r.s_star == 2);
    CHECK(r.signature.eta(0, 1) == 1.0);
    CHECK(r.m_values.front() == doctest::Approx(0.25));
  }

  TEST_CASE("search failure when no size is stable") {
    // On K_n, M(s) = (s-1)/(2s), so M(4) exceeds M(2) by more than 3 gamma/4.
    const FinalSearchParams p = small_params(0.5, 2, 0.01);
    ExactPartitionOracle oracle(p.mu);
    CHECK_THROWS_AS(signature_search(complete_graph(8), p, oracle), SearchFailure);
  }

  TEST_CASE("sampled oracle repetitions") {
    CHECK(SampledPartitionOracle::default_reps(1) == 10);
    CHECK(SampledPartitionOracle::default_reps(100) == 50);
    SampledPartitionOracle o(0.2, 6, 5, 1);
    const PartitionProperty pi{2, {1.0}, {1.0}};
    CHECK(o.accepts(complete_graph(10), pi, 0));
    CHECK_FALSE(o.accepts(empty_graph(10), pi, 1));
    CHECK(o.vertex_queries() <= 10);
    CHECK(o.edge_queries() == 2 * 5 * 15);
  }
}
