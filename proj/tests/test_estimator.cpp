#include <doctest.h>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/estimator.hpp"

using namespace pdist;

namespace {

EstimatorParams params_of(double alpha, double eps, double delta, double beta, int T) {
  EstimatorParams p;
  p.alpha = alpha;
  p.eps = eps;
  p.delta = delta;
  p.beta = beta;
  p.T = T;
  return p;
}

FinalSearchParams search_of(int t_cap, double gamma) {
  FinalSearchParams s;
  s.t_cap = t_cap;
  s.gamma = gamma;
  s.mu = sandwich_mu(gamma, s.growth, t_cap);
  return s;
}

std::vector<double> values_of(const Signature& s) { return {s.values().begin(), s.values().end()}; }

const std::vector<Graph> k2_family{complete_graph(2)};

}  // namespace

TEST_SUITE("estimator") {
  TEST_CASE("extensions") {
    const Signature s(2, {0.6});
    CHECK(extensions_of(s, 2).size() == 1);
    const auto e = extensions_of(s, 3);
    REQUIRE(e.size() == 3);
    CHECK(e[0].signature == s);
    CHECK(e[1].split == std::vector<int>{1, 2});
    CHECK(values_of(e[1].signature) == std::vector<double>{0.6, 0.6, 0.0});
    CHECK(values_of(e[2].signature) == std::vector<double>{0.0, 0.6, 0.6});
    for (const auto& x : extensions_of(Signature(1), 3))
      for (double v : x.signature.values()) CHECK(v == 0.0);
    CHECK_THROWS_AS(extensions_of(Signature(4), 3), DomainError);
    CHECK_THROWS_AS(extensions_of(Signature(3), 12, 10), SizeError);
  }

  TEST_CASE("extensions match the naive split walk") {
    const Signature s(3, {0.25, 0.5, 1.0});
    const auto ours = extensions_of(s, 6);
    const auto ref = oracle::naive_extensions(s, 6);
    REQUIRE(ours.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(values_of(ours[k].signature) == ref[k]);
  }

  TEST_CASE("hereditary certificates") {
    const auto c = hereditary_certificates(k2_family, 0.5, 2, 0.5);
    REQUIRE(c.size() == 3);
    CHECK(c[0].t() == 1);
    CHECK(values_of(c[1]) == std::vector<double>{0.0});
    CHECK(values_of(c[2]) == std::vector<double>{0.5});
    CHECK(hereditary_certificates({}, 0.5, 2, 0.5).size() == 4);
    CHECK(hereditary_certificates(k2_family, 2.0, 3, 0.5).size() == 1 + 3 + 27);
  }

  TEST_CASE("hereditary certificates match the naive grid") {
    const std::vector<Graph> family{complete_graph(3), path_graph(3)};
    const double delta = 0.3;
    const auto ours = hereditary_certificates(family, delta, 3, 0.25);
    std::vector<std::vector<double>> ref;
    for (int t = 1; t <= 3; ++t) {
      const auto part = oracle::naive_grid(t, 4, [&](const WeightedGraph& r) {
        for (const Graph& h : family)
          if (oracle::ind(h, r, true) > delta / 2 + 1e-12) return false;
        return true;
      });
      ref.insert(ref.end(), part.begin(), part.end());
    }
    REQUIRE(ours.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(values_of(ours[k]) == ref[k]);
  }

  TEST_CASE("hereditary estimator examples") {
    const Verdict zero = estimate_hereditary(Signature(2, {0.0}), k2_family, params_of(0.5, 0.2, 0.5, 0.5, 2));
    CHECK(zero.verdict == Case::close);
    REQUIRE(zero.witness);
    CHECK(zero.witness->d1 == 0.0);

    const Signature one(2, {1.0});
    const Verdict far = estimate_hereditary(one, k2_family, params_of(0.2, 0.2, 0.5, 0.5, 2));
    CHECK(far.verdict == Case::far);
    CHECK_FALSE(far.witness);

    const Verdict close = estimate_hereditary(one, k2_family, params_of(0.4, 0.2, 0.5, 0.5, 2));
    CHECK(close.verdict == Case::close);
    REQUIRE(close.witness);
    // First pair in scan order: certificate 0 at d1 = 1/4 <= 0.3.
    CHECK(close.witness->d1 == doctest::Approx(0.25));
    CHECK(values_of(close.witness->certificate) == std::vector<double>{0.0});
    CHECK(signature_d1(one, Signature(2, {0.5})) == doctest::Approx(0.125));
  }

  TEST_CASE("general certificates") {
    const std::set<std::uint64_t> edge{1}, all{0, 1};
    const auto c = general_certificates(edge, 2, 2, 0.5);
    REQUIRE(c.size() == 2);
    CHECK(values_of(c[0]) == std::vector<double>{0.5});
    CHECK(values_of(c[1]) == std::vector<double>{1.0});
    CHECK(general_certificates(all, 2, 2, 0.5).size() == 3);
    CHECK(general_certificates({}, 2, 3, 0.5).empty());
  }

  TEST_CASE("general certificates match perceived mass") {
    const std::set<std::uint64_t> family{0, 3, 5};
    const auto ours = general_certificates(family, 3, 4, 0.5);
    std::vector<std::vector<double>> ref;
    for (int t = 3; t <= 4; ++t) {
      const auto part = oracle::naive_grid(t, 2, [&](const WeightedGraph& r) {
        return oracle::perceived_mass(r, 3, family) >= 0.5 - 1e-12;
      });
      ref.insert(ref.end(), part.begin(), part.end());
    }
    REQUIRE(ours.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(values_of(ours[k]) == ref[k]);
  }

  TEST_CASE("general estimator examples") {
    const std::set<std::uint64_t> edge{1};
    CHECK(estimate_general(Signature(2, {1.0}), edge, 2, params_of(0.3, 0.1, 0.5, 0.5, 2)).verdict == Case::close);
    const Verdict close = estimate_general(Signature(2, {0.0}), edge, 2, params_of(0.3, 0.2, 0.5, 0.5, 2));
    CHECK(close.verdict == Case::close);
    REQUIRE(close.witness);
    CHECK(close.witness->d1 == doctest::Approx(0.125));
    CHECK(estimate_general(Signature(2, {0.0}), edge, 2, params_of(0.2, 0.2, 0.5, 0.5, 2)).verdict == Case::far);
  }

  TEST_CASE("estimators are deterministic") {
    const Signature s(3, {0.25, 0.75, 0.5});
    const auto p = params_of(0.3, 0.1, 0.4, 0.25, 4);
    const std::vector<Graph> family{complete_graph(3)};
    const Verdict a = estimate_hereditary(s, family, p), b = estimate_hereditary(s, family, p);
    CHECK(a.verdict == b.verdict);
    CHECK(a.witness.has_value() == b.witness.has_value());
    if (a.witness) CHECK(a.witness->certificate == b.witness->certificate);
    EstimatorParams serial = p;
    serial.exec = Exec::serial;
    CHECK(estimate_hereditary(s, family, serial).verdict == a.verdict);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params_of(0.1, 0.2, 0.5, 0.5, 2).validate(), DomainError);
    CHECK_THROWS_AS(params_of(0.3, 0.1, 0.5, 0.3, 2).validate(), DomainError);
    CHECK_THROWS_AS(params_of(0.3, 0.1, 0.5, 0.5, 0).validate(), DomainError);
  }

  TEST_CASE("hereditary pipeline") {
    const PropertySpec edgeless = edgeless_property();
    const FinalSearchParams search = search_of(2, 0.2);
    const Verdict empty = pipeline_hereditary(empty_graph(8), edgeless, params_of(0.3, 0.2, 0.5, 0.25, 3), search, 1);
    CHECK(empty.verdict == Case::close);
    CHECK_FALSE(empty.shortcut);
    CHECK(empty.edge_queries == 28);

    EstimatorParams strict = params_of(0.2, 0.1, 0.5, 0.25, 3);
    strict.removal_delta = 0.1;
    const Verdict k8 = pipeline_hereditary(complete_graph(8), edgeless, strict, search, 1);
    CHECK(k8.verdict == Case::far);
    CHECK(k8.s_star == 2);

    const std::vector<int> sizes{4, 4};
    const Graph kb = blowup(complete_graph(2), sizes, {false, false});
    CHECK(pipeline_hereditary(kb, bipartite_property(), params_of(0.2, 0.1, 0.5, 0.25, 3), search, 1).verdict ==
          Case::close);
  }

  TEST_CASE("small inputs read the whole graph") {
    EstimatorParams p = params_of(0.2, 0.1, 0.5, 0.25, 3);
    p.removal_n0 = 10;
    const Verdict v = pipeline_hereditary(complete_graph(6), edgeless_property(), p, search_of(2, 0.1), 1);
    CHECK(v.shortcut);
    CHECK(v.verdict == Case::far);
    CHECK(v.oracle_dist == doctest::Approx(15.0 / 36.0));
    CHECK(v.edge_queries == 15);
  }

  TEST_CASE("general pipeline") {
    const FinalSearchParams search = search_of(2, 0.2);
    const auto p = params_of(0.3, 0.1, 0.5, 0.5, 2);
    const Graph g = random_graph(8, 0.5, 3);
    CHECK(pipeline_general(g, {0, 1}, 2, p, search, 1).verdict == Case::close);
    CHECK(pipeline_general(g, {}, 2, p, search, 1).verdict == Case::far);

    // K8 needs gamma above the gap M(4) - M(2) = 1/8 at t_cap 2.
    FinalSearchParams tight = search_of(2, 0.1);
    ExactPartitionOracle probe(tight.mu);
    CHECK_THROWS_AS(signature_search(complete_graph(8), tight, probe), SearchFailure);

    // Replay against the naive extension and certificate walk.
    const Verdict v = pipeline_general(complete_graph(8), {0}, 2, p, search, 1);
    ExactPartitionOracle oracle(search.mu);
    const SignatureSearchResult found = signature_search(complete_graph(8), search, oracle);
    const auto certs = oracle::naive_grid(2, 2, [](const WeightedGraph& r) {
      return oracle::perceived_mass(r, 2, {0}) >= 0.5 - 1e-12;
    });
    const auto ref = oracle::naive_search(oracle::naive_extensions(found.signature, 2), certs, 0.3 - 0.05 - 0.025);
    CHECK((v.verdict == Case::close) == ref.close);
    CHECK(v.verdict == Case::close);
    REQUIRE(v.witness);
    CHECK(values_of(v.witness->certificate) == ref.certificate);
  }
}
