#include <doctest.h>

#include "oracles.hpp"
#include "pdist/errors.hpp"
#include "pdist/metrics.hpp"
#include "pdist/regularity.hpp"

using namespace pdist;

namespace {

// Edges (0,2),(1,3) across parts {0,1},{2,3}.
Graph matching() {
  Graph g(4);
  g.set_edge(0, 2);
  g.set_edge(1, 3);
  return g;
}

std::vector<int> labels_of(const Equipartition& a) { return {a.labels().begin(), a.labels().end()}; }

}  // namespace

TEST_SUITE("regularity") {
  TEST_CASE("averaged graph") {
    const Equipartition a = canonical_equipartition(4, 2);
    const WeightedGraph avg = averaged_graph(matching(), a);
    CHECK(avg.at(0, 2) == doctest::Approx(0.5));
    CHECK(avg.at(1, 2) == doctest::Approx(0.5));
    CHECK(avg.at(0, 1) == 0.0);
    const WeightedGraph k4 = averaged_graph(complete_graph(4), a);
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) CHECK(k4.at(u, v) == doctest::Approx(1.0));
  }

  TEST_CASE("complete graph is perfectly regular") {
    const auto r = fk_irregularity(complete_graph(6), canonical_equipartition(6, 3));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("matching fixture") {
    const Graph g = matching();
    const Equipartition a = canonical_equipartition(4, 2);
    const Irregularity r = fk_irregularity(g, a);
    CHECK(r.value == doctest::Approx(1.0 / 16.0));
    CHECK(r.exact);
    const double box = d_box(WeightedGraph::from_graph(g), averaged_graph(g, a)).value;
    CHECK(box == doctest::Approx(1.0 / 32.0));
  }

  TEST_CASE("exact values match the 4^n brute force") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int n = 4 + static_cast<int>(seed % 4);
      const int t = 2 + static_cast<int>(seed % 2);
      const Graph g = random_graph(n, 0.5, seed);
      const Equipartition a = canonical_equipartition(n, t);
      const auto d = oracle::deviation(g, labels_of(a), t);
      const auto dm = deviation_matrix(g, a, DiagonalMode::exclude);
      for (std::size_t k = 0; k < d.size(); ++k) CHECK(dm[k] == doctest::Approx(d[k]).epsilon(1e-12));

      const double fk_ref = oracle::fk(d, n), star_ref = oracle::fk_star(d, n, labels_of(a), t);
      IrregularityOptions serial;
      serial.exec = Exec::serial;
      CHECK(fk_irregularity(g, a).value == doctest::Approx(fk_ref).epsilon(1e-12));
      CHECK(fk_irregularity(g, a, serial).value == doctest::Approx(fk_ref).epsilon(1e-12));
      CHECK(fk_star_irregularity(g, a).value == doctest::Approx(star_ref).epsilon(1e-12));
      CHECK(fk_star_irregularity(g, a, serial).value == doctest::Approx(star_ref).epsilon(1e-12));
      CHECK(fk_ref <= star_ref + 1e-12);

      const double box = d_box(WeightedGraph::from_graph(g), averaged_graph(g, a)).value;
      CHECK(box <= fk_ref + 1e-12);
      CHECK(fk_ref <= 2.0 * box + 1e-12);
    }
  }

  TEST_CASE("witness sets realize the value") {
    const Graph g = random_graph(8, 0.4, 3);
    const Equipartition a = canonical_equipartition(8, 2);
    const Irregularity r = fk_irregularity(g, a);
    const auto d = deviation_matrix(g, a, DiagonalMode::exclude);
    double sum = 0;
    for (int x : r.s.members())
      for (int y : r.t.members()) sum += d[static_cast<std::size_t>(x * 8 + y)];
    CHECK(std::abs(sum) / 64.0 == doctest::Approx(r.value));
  }

  TEST_CASE("serial and parallel kernels agree") {
    const Graph g = random_graph(14, 0.5, 8);
    const Equipartition a = canonical_equipartition(14, 3);
    const auto d = deviation_matrix(g, a, DiagonalMode::exclude);
    const ArgMax fs = full_cut_serial(d, 14), fp = full_cut_parallel(d, 14);
    CHECK(fs.value == doctest::Approx(fp.value).epsilon(1e-12));
    CHECK(fs.index == fp.index);
    const ArgMax ss = star_cut_serial(d, a), sp = star_cut_parallel(d, a);
    CHECK(ss.value == doctest::Approx(sp.value).epsilon(1e-12));
  }

  TEST_CASE("heuristic is a flagged lower bound") {
    const Graph g = random_graph(12, 0.5, 21);
    const Equipartition a = canonical_equipartition(12, 3);
    IrregularityOptions h;
    h.mode = CutMode::heuristic;
    const Irregularity fh = fk_irregularity(g, a, h), sh = fk_star_irregularity(g, a, h);
    CHECK_FALSE(fh.exact);
    CHECK_FALSE(sh.exact);
    CHECK(fh.value <= fk_irregularity(g, a).value + 1e-12);
    CHECK(sh.value <= fk_star_irregularity(g, a).value + 1e-12);
    CHECK_THROWS_AS(fk_star_irregularity(random_graph(20, 0.5, 1), canonical_equipartition(20, 2)), SizeError);
  }

  TEST_CASE("diagonal mode include") {
    const Graph g = random_graph(6, 0.5, 2);
    const Equipartition a = canonical_equipartition(6, 2);
    IrregularityOptions inc;
    inc.diagonal = DiagonalMode::include;
    const auto d = deviation_matrix(g, a, DiagonalMode::include);
    CHECK(fk_irregularity(g, a, inc).value == doctest::Approx(oracle::fk(d, 6)).epsilon(1e-12));
  }

  TEST_CASE("refinement on a half graph") {
    const Graph g = half_graph(6);
    const Equipartition a(std::vector<int>{0, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1}, 2);
    const auto step = fk_refine(g, a, 0.01);
    REQUIRE(step.has_value());
    CHECK(is_refinement(step->after, a));
    CHECK(step->after.t() <= 4 * a.t());
    CHECK(step->index_gain > 0.0);
    CHECK(step->index_gain == doctest::Approx(index_of_partition(g, step->after) - index_of_partition(g, a)));
    CHECK_FALSE(fk_refine(complete_graph(6), canonical_equipartition(6, 2), 0.01).has_value());
  }
}
