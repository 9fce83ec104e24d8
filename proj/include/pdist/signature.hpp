#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"

namespace pdist {

/// Density sequence eta_{i,j}, 0 <= i < j < t, stored in lexicographic pair order.
class Signature {
 public:
  explicit Signature(int t = 1);
  Signature(int t, std::vector<double> eta);

  int t() const { return t_; }
  /// Symmetric lookup; i != j.
  double eta(int i, int j) const;
  void set(int i, int j, double value);
  std::span<const double> values() const { return eta_; }

  /// The signature as a weighted graph on t vertices.
  WeightedGraph as_weighted_graph() const;

  bool operator==(const Signature& other) const = default;

 private:
  int t_;
  std::vector<double> eta_;
};

/// Partition property (s, alpha, beta): an equipartition into s parts with
/// alpha_{ij} <= d(V_i,V_j) <= beta_{ij} for every pair i<j.
struct PartitionProperty {
  int s = 1;
  std::vector<double> alpha;
  std::vector<double> beta;

  /// Throws DomainError unless 0 <= alpha <= beta <= 1 with C(s,2) entries each.
  void validate() const;
  /// Lower bounds read as a signature.
  Signature lower_signature() const { return Signature(s, alpha); }
};

/// (1/t^2) sum_{i<j} d(V_i,V_j)^2.
double index_of_partition(const Graph& g, const Equipartition& a);
/// Same quantity from a t x t density matrix.
double index_from_densities(std::span<const double> densities, int t);
/// (1/s^2) sum_{i<j} alpha_{ij}^2.
double index_of_property(const PartitionProperty& pi);
double index_of_signature(const Signature& s);

/// eta_{ij} = d(V_i,V_j).
Signature zero_signature(const Graph& g, const Equipartition& a);

/// True iff |d(V_i,V_j) - eta_{ij}| <= gamma for all but at most eps*C(t,2) pairs.
bool signature_check(const Signature& s, const Equipartition& a, const Graph& g, double gamma, double eps);

/// d_1 between signatures of the same size, (1/t^2) sum_{i<j} |eta - eta'|.
double signature_d1(const Signature& a, const Signature& b);

/// Extension of s (a signature of a) to the refinement b.
Signature extend_signature(const Signature& s, const Equipartition& a, const Equipartition& b);

enum class GridMode { full, slab };

/// Number of levels 1/mu; throws DomainError unless 1/mu is (numerically) integral.
int grid_levels(double mu);

/// Visits pi(s,mu) (full) or pi'(s,mu) (slab; beta = min(1, alpha+mu)) in
/// lexicographic order of the level vectors. Throws SizeError when the family
/// exceeds `cap` members.
void for_each_property(int s, double mu, GridMode mode, const std::function<bool(const PartitionProperty&)>& visit,
                       std::uint64_t cap = 10'000'000);
std::vector<PartitionProperty> enumerate_property_grid(int s, double mu, GridMode mode, std::uint64_t cap = 10'000'000);
std::uint64_t property_grid_size(int s, double mu, GridMode mode);

/// Cost of equipartition `a` for pi, normalized by n^2; `a` is labeled.
double property_cost(const Graph& g, const Equipartition& a, const PartitionProperty& pi);

/// Minimum over labeled equipartitions into pi.s parts of property_cost.
/// Throws SizeError when the enumeration exceeds `cap` labeled partitions.
double property_distance(const Graph& g, const PartitionProperty& pi, Exec exec = Exec::parallel,
                         std::uint64_t cap = 200'000'000);

// --- signature file format --------------------------------------------------

/// "t" then C(t,2) lines "i j eta" with 1 <= i < j <= t.
Signature read_signature(std::istream& in);
Signature read_signature_file(const std::string& path);
void write_signature(std::ostream& out, const Signature& s);

}  // namespace pdist
