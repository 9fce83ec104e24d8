#pragma once

#include <cstdint>
#include <map>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"

namespace pdist {

/// d_1(R,R') = (1/n^2) sum_{i<j} |R(i,j) - R'(i,j)|.
double d1(const WeightedGraph& r, const WeightedGraph& rp);

enum class CutMode { exact, heuristic };

struct CutOptions {
  CutMode mode = CutMode::exact;
  int exact_cap = 16;
  int starts = 32;          // heuristic restarts
  std::uint64_t seed = 0;   // heuristic generator seed
  Exec exec = Exec::parallel;
};

/// Value of a cut-norm style maximization. `exact == false` marks a
/// heuristic lower bound.
struct CutValue {
  double value = 0.0;
  bool exact = true;
};

/// d_box(R,R') = max over alpha,beta:[n]->[0,1] of
/// (1/n^2) |sum_{i<j} alpha(i) beta(j) (R-R')(i,j)|.
/// Exact mode enumerates Boolean alpha and picks beta by sign; throws
/// SizeError when n > exact_cap.
CutValue d_box(const WeightedGraph& r, const WeightedGraph& rp, const CutOptions& options = {});

/// Upper-triangular cut kernel on a dense difference matrix (row-major, n x n,
/// only entries i<j are read). Returns the unnormalized maximum.
double upper_cut_serial(std::span<const double> diff, int n);
double upper_cut_parallel(std::span<const double> diff, int n);

/// Distribution over labeled q-vertex graphs keyed by their pair code.
struct GraphDistribution {
  int q = 0;
  std::map<std::uint64_t, double> probs;

  double at(std::uint64_t code) const {
    auto it = probs.find(code);
    return it == probs.end() ? 0.0 : it->second;
  }
  double total() const;
  /// Validates nonnegativity and total mass within 1e-9 of 1.
  void check() const;
};

/// (1/2) sum_H |mu(H) - nu(H)|.
double variation_distance(const GraphDistribution& mu, const GraphDistribution& nu);

/// Distribution on labeled q-graphs with independent pair probabilities
/// (lexicographic pair order).
GraphDistribution product_distribution(int q, std::span<const double> pair_probs);

}  // namespace pdist
