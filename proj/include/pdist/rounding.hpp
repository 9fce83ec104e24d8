#pragma once

#include <cstdint>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"
#include "pdist/signature.hpp"

namespace pdist {

struct RoundingReport {
  Graph result;
  std::size_t edits = 0;
  Signature realized;       // zero signature of A in the result
  double per_pair_dev = 0;  // max |d'(V_i,V_j) - eta'_{ij}|
};

/// Probability that (u,v) is an edge after rounding toward `target`. Pairs
/// inside a part keep their state.
double rounding_edge_probability(const Graph& g, const Equipartition& a, const std::vector<double>& densities,
                                 const Signature& target, int u, int v);

/// Removes cross edges with probability 1 - eta'/d when eta' < d and adds
/// cross non-edges with probability 1 - (1-eta')/(1-d) when eta' > d. Coins
/// are counter-based on (seed, pair), so the result does not depend on `exec`.
RoundingReport randomized_round(const Graph& g, const Equipartition& a, const Signature& target, std::uint64_t seed,
                                Exec exec = Exec::parallel);

/// E[d'(X,Y)] under randomized_round, ordered pairs with x != y.
double expected_rounded_density(const Graph& g, const Equipartition& a, const Signature& target, const VertexSet& x,
                                const VertexSet& y);

}  // namespace pdist
