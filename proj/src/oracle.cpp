#include "pdist/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"

namespace pdist {

std::size_t dist_oracle_edits(const Graph& g, const PropertySpec& p, Exec exec, bool allow_n8) {
  const int n = g.n();
  if (n > (allow_n8 ? 8 : 7)) throw SizeError("dist_oracle enumerates graphs on at most 7 vertices (8 with opt-in)");
  const std::uint64_t base = g.code();
  const std::uint64_t total = std::uint64_t{1} << pair_count(static_cast<std::size_t>(n));
  const std::size_t none = ~std::size_t{0};
  std::size_t best = none;
  if (exec == Exec::serial) {
    for (std::uint64_t code = 0; code < total; ++code) {
      const auto edits = static_cast<std::size_t>(std::popcount(code ^ base));
      if (edits < best && p.predicate(Graph::from_code(n, code))) best = edits;
    }
  } else {
    const long long chunks = static_cast<long long>(std::min<std::uint64_t>(total, 1024));
    const std::uint64_t per = total / static_cast<std::uint64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
    for (long long c = 0; c < chunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * per;
      for (std::uint64_t code = lo; code < lo + per; ++code) {
        const auto edits = static_cast<std::size_t>(std::popcount(code ^ base));
        if (edits < best && p.predicate(Graph::from_code(n, code))) best = edits;
      }
    }
  }
  if (best == none) throw DomainError("no graph on " + std::to_string(n) + " vertices has property " + p.name);
  return best;
}

double dist_oracle(const Graph& g, const PropertySpec& p, Exec exec, bool allow_n8) {
  const double n = g.n();
  return static_cast<double>(dist_oracle_edits(g, p, exec, allow_n8)) / (n * n);
}

bool QueryCountingOracle::query(int u, int v) {
  if (u < 0 || v < 0 || u >= g_.n() || v >= g_.n() || u == v) throw DomainError("bad edge query");
  ++queries_;
  distinct_.emplace(u, v);
  return g_.has_edge(u, v);
}

void QueryCountingOracle::reset() {
  queries_ = 0;
  distinct_.clear();
  vertices_.clear();
}

bool canonical_test(QueryCountingOracle& oracle, const PropertySpec& p, int q, std::uint64_t seed) {
  const int n = oracle.n();
  if (q < 1 || q > n) throw DomainError("sample size must lie in [1, n]");
  if (!p.hereditary) throw DomainError("the canonical tester needs a hereditary property");
  Rng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int a = 0; a < q; ++a) {
    std::uniform_int_distribution<int> pick(a, n - 1);
    std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> sample(perm.begin(), perm.begin() + q);
  std::sort(sample.begin(), sample.end());
  Graph h(q);
  for (int a = 0; a < q; ++a) {
    oracle.touch(sample[static_cast<std::size_t>(a)]);
    for (int b = a + 1; b < q; ++b)
      if (oracle.query(sample[static_cast<std::size_t>(a)], sample[static_cast<std::size_t>(b)])) h.set_edge(a, b);
  }
  return p.predicate(h);
}

}  // namespace pdist
