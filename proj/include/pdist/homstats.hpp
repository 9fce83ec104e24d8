#pragma once

#include <cstdint>

#include "pdist/graph.hpp"
#include "pdist/metrics.hpp"
#include "pdist/parallel.hpp"
#include "pdist/signature.hpp"

namespace pdist {

struct HomOptions {
  std::uint64_t exact_cap = 100'000'000;  // map evaluations allowed in exact mode
  std::uint64_t samples = 200'000;        // maps drawn when exact mode is over the cap
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
};

/// A density together with how it was obtained. `radius` is the additive
/// Chernoff radius at confidence 0.95 for sampled values and 0 for exact ones.
struct DensityEstimate {
  double value = 0.0;
  bool exact = true;
  double radius = 0.0;
  std::uint64_t maps = 0;
};

/// Chernoff radius sqrt(ln(2/0.05) / (2m)).
double chernoff_radius(std::uint64_t m);

/// (1/k^h) sum over maps phi: V(F) -> V(R) of the induced product weight;
/// non-injective maps contribute 0.
DensityEstimate ind_induced(const Graph& f, const WeightedGraph& r, const HomOptions& options = {});
inline DensityEstimate ind_induced(const Graph& f, const Graph& g, const HomOptions& options = {}) {
  return ind_induced(f, WeightedGraph::from_graph(g), options);
}

/// Same average over all maps, injective or not, with R(v,v) = 0.
DensityEstimate ind_prime(const Graph& f, const WeightedGraph& r, const HomOptions& options = {});

struct StatisticEstimate {
  GraphDistribution dist;
  bool exact = true;
  std::uint64_t samples = 0;
};

/// Law of the labeled graph induced on q uniformly drawn distinct vertices
/// (ordered draw). Exact when n!/(n-q)! <= exact_cap.
StatisticEstimate q_statistic(const Graph& g, int q, const HomOptions& options = {});

/// Law of the q-graph obtained by drawing distinct indices i_1..i_q of [t]
/// and independent edges with probability eta. Always exact.
GraphDistribution perceived_q_statistic(const Signature& s, int q);

}  // namespace pdist
