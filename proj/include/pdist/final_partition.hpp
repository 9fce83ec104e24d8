#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"
#include "pdist/signature.hpp"

namespace pdist {

/// How signature_search evaluates the slab families.
enum class SlabStrategy {
  automatic,  // exact oracle: integer knapsack per equipartition; other oracles: grid scan
  grid,       // always walk the slab grid through the oracle
};

struct FinalSearchParams {
  int k = 2;           // minimum number of parts
  double gamma = 0.1;  // finality slack
  int growth = 2;      // f(x) = growth * x
  double mu = 0.25;    // grid quantum, 1/mu integral
  int t_cap = 4;       // largest candidate size T
  Exec exec = Exec::parallel;
  SlabStrategy strategy = SlabStrategy::automatic;
  std::uint64_t grid_cap = 10'000'000;

  /// Throws DomainError on invalid fields.
  void validate() const;
  int f(int x) const { return growth * x; }
};

/// Largest 1/L not above gamma / (48 g^2 T^2).
double sandwich_mu(double gamma, int growth, int t);

struct IndexMax {
  double value = 0.0;
  Equipartition arg;
};

/// M_G(s): maximum index over equipartitions into s parts, with a maximizer
/// (first in enumeration order).
IndexMax max_index(const Graph& g, int s, Exec exec = Exec::parallel);

/// True iff no equipartition with t..f(t) parts reaches ind(A) + gamma.
/// Sizes above n are skipped.
bool is_final(const Graph& g, const Equipartition& a, const FinalSearchParams& params);

struct FinalResult {
  Equipartition partition;
  int rounds = 0;
};

/// Starts from the canonical k-partition and moves to the best partition in the
/// window while that gains at least gamma/2.
FinalResult find_final(const Graph& g, const FinalSearchParams& params);

/// answer(pi, G) in {accept, reject}. `id` keys per-property randomness.
class PartitionOracle {
 public:
  virtual ~PartitionOracle() = default;
  virtual bool accepts(const Graph& g, const PartitionProperty& pi, std::uint64_t id) = 0;
  /// Edge queries issued so far.
  virtual std::uint64_t edge_queries() const { return 0; }
  /// Distinct vertices sampled so far.
  virtual std::uint64_t vertex_queries() const { return 0; }
};

/// Accepts iff property_distance(G, pi) < mu.
class ExactPartitionOracle : public PartitionOracle {
 public:
  explicit ExactPartitionOracle(double mu, Exec exec = Exec::parallel) : mu_(mu), exec_(exec) {}
  bool accepts(const Graph& g, const PartitionProperty& pi, std::uint64_t id) override;
  /// The exact oracle reads every pair of g.
  void record_read(const Graph& g);
  double mu() const { return mu_; }
  std::uint64_t edge_queries() const override { return queried_ ? edges_ : 0; }
  std::uint64_t vertex_queries() const override { return queried_ ? vertices_ : 0; }

 private:
  double mu_;
  Exec exec_;
  bool queried_ = false;
  std::uint64_t edges_ = 0, vertices_ = 0;
};

/// Majority vote over `reps` independent samples of q' vertices; a sample
/// votes accept iff its property distance is at most mu/2.
class SampledPartitionOracle : public PartitionOracle {
 public:
  SampledPartitionOracle(double mu, int sample_size, int reps, std::uint64_t seed)
      : mu_(mu), sample_size_(sample_size), reps_(reps), seed_(seed) {}
  /// reps = 10 * ceil(ln b) for a family of b properties (at least 10).
  static int default_reps(std::uint64_t family_size);

  bool accepts(const Graph& g, const PartitionProperty& pi, std::uint64_t id) override;
  std::uint64_t edge_queries() const override { return edges_; }
  std::uint64_t vertex_queries() const override { return vertices_.size(); }

 private:
  double mu_;
  int sample_size_;
  int reps_;
  std::uint64_t seed_;
  std::uint64_t edges_ = 0;
  std::set<int> vertices_;
};

struct SignatureSearchResult {
  Signature signature;
  PartitionProperty property;
  int s_star = 0;
  std::vector<int> sizes;       // sizes scanned, k..min(f(T), n)
  std::vector<double> m_values; // M(s) for each scanned size
  std::uint64_t oracle_calls = 0;
};

/// M(s) = max index over accepted slab properties pi'(s, mu), for s = k..f(T);
/// s* = smallest s <= T with M(s') <= M(s) + 3 gamma / 4 for s < s' <= f(s).
/// Ties among equal-index properties go to the lexicographically least alpha.
/// Throws SearchFailure when no s* exists and SizeError on grid blowup.
SignatureSearchResult signature_search(const Graph& g, const FinalSearchParams& params, PartitionOracle& oracle);

/// Exact-oracle M(s) with its lexicographically least maximizing property,
/// computed per equipartition as an integer knapsack over grid levels.
struct SlabMax {
  double value = 0.0;
  PartitionProperty property;
};
SlabMax exact_slab_max(const Graph& g, int s, double mu, Exec exec = Exec::parallel);

}  // namespace pdist
