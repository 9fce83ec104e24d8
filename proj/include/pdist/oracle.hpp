#pragma once

#include <cstdint>
#include <set>
#include <utility>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"
#include "pdist/properties.hpp"

namespace pdist {

/// dist_P(G): min over graphs H on V(G) with the property of |E(G) xor E(H)| / n^2.
/// n <= 7, or n <= 8 with allow_n8. Throws SizeError above that and
/// DomainError when no graph on n vertices has the property.
double dist_oracle(const Graph& g, const PropertySpec& p, Exec exec = Exec::parallel, bool allow_n8 = false);
/// Unnormalized minimum edit count.
std::size_t dist_oracle_edits(const Graph& g, const PropertySpec& p, Exec exec = Exec::parallel, bool allow_n8 = false);

/// Edge-query access to a graph with counters.
class QueryCountingOracle {
 public:
  explicit QueryCountingOracle(const Graph& g) : g_(g) {}

  int n() const { return g_.n(); }
  bool query(int u, int v);
  /// Marks a vertex as sampled.
  void touch(int v) { vertices_.insert(v); }

  std::uint64_t edge_queries() const { return queries_; }
  std::uint64_t distinct_queries() const { return distinct_.size(); }
  std::uint64_t vertex_queries() const { return vertices_.size(); }
  void reset();

 private:
  const Graph& g_;
  std::uint64_t queries_ = 0;
  std::set<std::pair<int, int>> distinct_;
  std::set<int> vertices_;
};

/// Samples q distinct vertices, queries every pair among them once and
/// accepts iff the sampled graph has the property.
bool canonical_test(QueryCountingOracle& oracle, const PropertySpec& p, int q, std::uint64_t seed);

}  // namespace pdist
