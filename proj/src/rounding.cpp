#include "pdist/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"

namespace pdist {

namespace {

void require_match(const Graph& g, const Equipartition& a, const Signature& target) {
  if (g.n() != a.n()) throw DomainError("partition and graph sizes differ");
  if (target.t() != a.t()) throw DomainError("target signature and partition sizes differ");
}

}  // namespace

double rounding_edge_probability(const Graph& g, const Equipartition& a, const std::vector<double>& densities,
                                 const Signature& target, int u, int v) {
  const int i = a.part_of(u), j = a.part_of(v);
  const bool edge = g.has_edge(u, v);
  if (i == j) return edge ? 1.0 : 0.0;
  const double d = densities[static_cast<std::size_t>(i) * static_cast<std::size_t>(a.t()) + static_cast<std::size_t>(j)];
  const double eta = target.eta(i, j);
  if (edge) return eta < d ? eta / d : 1.0;
  return eta > d ? 1.0 - (1.0 - eta) / (1.0 - d) : 0.0;
}

RoundingReport randomized_round(const Graph& g, const Equipartition& a, const Signature& target, std::uint64_t seed,
                                Exec exec) {
  require_match(g, a, target);
  const int n = g.n();
  const auto densities = block_densities(g, a);
  std::vector<std::vector<int>> flips(static_cast<std::size_t>(n));
  auto row = [&](int u) {
    auto& out = flips[static_cast<std::size_t>(u)];
    for (int v = u + 1; v < n; ++v) {
      if (a.part_of(u) == a.part_of(v)) continue;
      const double p = rounding_edge_probability(g, a, densities, target, u, v);
      const bool now = counter_uniform({seed, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)}) < p;
      if (now != g.has_edge(u, v)) out.push_back(v);
    }
  };
  if (exec == Exec::serial) {
    for (int u = 0; u < n; ++u) row(u);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (int u = 0; u < n; ++u) row(u);
  }
  Graph result = g;
  std::size_t edits = 0;
  for (int u = 0; u < n; ++u)
    for (int v : flips[static_cast<std::size_t>(u)]) {
      result.toggle_edge(u, v);
      ++edits;
    }
  Signature realized = zero_signature(result, a);
  double dev = 0.0;
  for (int i = 0; i < a.t(); ++i)
    for (int j = i + 1; j < a.t(); ++j) dev = std::max(dev, std::abs(realized.eta(i, j) - target.eta(i, j)));
  return {std::move(result), edits, std::move(realized), dev};
}

double expected_rounded_density(const Graph& g, const Equipartition& a, const Signature& target, const VertexSet& x,
                                const VertexSet& y) {
  require_match(g, a, target);
  const auto densities = block_densities(g, a);
  double sum = 0.0;
  for (int u : x.members())
    for (int v : y.members())
      if (u != v) sum += rounding_edge_probability(g, a, densities, target, std::min(u, v), std::max(u, v));
  const double denom = static_cast<double>(x.size()) * static_cast<double>(y.size());
  if (denom == 0.0) throw DomainError("density of an empty set");
  return sum / denom;
}

}  // namespace pdist
