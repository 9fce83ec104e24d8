#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "pdist/final_partition.hpp"
#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"
#include "pdist/properties.hpp"
#include "pdist/signature.hpp"

namespace pdist {

struct EstimatorParams {
  double alpha = 0.3;
  double eps = 0.1;
  double delta = 0.5;
  double beta = 0.25;  // certificate quantum, 1/beta integral
  int T = 3;           // extension / certificate size cap
  double gamma = 0.1;
  int removal_M = 0;          // forbidden-family vertex cap; 0 = smallest violator size
  double removal_delta = 0;   // certificate density threshold; 0 = use delta
  int removal_n0 = 0;         // below this n the pipeline reads the whole graph
  std::uint64_t extension_cap = 1'000'000;
  std::uint64_t grid_cap = 10'000'000;
  Exec exec = Exec::parallel;

  /// Throws DomainError on invalid fields.
  void validate() const;
};

/// A signature on sum(split) parts obtained by splitting part i of the
/// source into split[i] parts; origin[j] is the source part of new part j.
struct Extension {
  Signature signature;
  std::vector<int> split;
  std::vector<int> origin;
};

/// Every extension of s on at most T parts, ordered by total size, then split
/// vector. Throws SizeError above `cap` members.
std::vector<Extension> extensions_of(const Signature& s, int T, std::uint64_t cap = 1'000'000);

/// Extension of s along a split vector.
Extension extension_by_split(const Signature& s, std::span<const int> split);

/// Signatures of every size 1..T with entries in {0, beta, ..., 1} and
/// ind(H,C) <= delta/2 for every H; sizes ascending, then level vectors in
/// lexicographic order.
std::vector<Signature> hereditary_certificates(std::span<const Graph> family, double delta, int T, double beta,
                                               Exec exec = Exec::parallel, std::uint64_t cap = 10'000'000);

/// Same grid, sizes q..T, keeping signatures whose perceived q-statistic puts
/// mass >= 1/2 on the family.
std::vector<Signature> general_certificates(const std::set<std::uint64_t>& family, int q, int T, double beta,
                                            Exec exec = Exec::parallel, std::uint64_t cap = 10'000'000);

enum class Case { close, far };
const char* case_name(Case c);

struct Witness {
  Signature extension;
  Signature certificate;
  double d1 = 0.0;
};

struct Verdict {
  Case verdict = Case::far;
  std::optional<Witness> witness;
  bool shortcut = false;     // decided by reading the whole graph
  double oracle_dist = -1;   // set on the shortcut path
  int s_star = 0;
  std::uint64_t edge_queries = 0;
  std::uint64_t vertex_queries = 0;
};

/// First pair (S', C) with equal sizes and d1(S', C) <= alpha - eps/2,
/// extensions outer, certificates inner.
Verdict search_witness(const Signature& s, std::span<const Signature> certificates, const EstimatorParams& params);

Verdict estimate_hereditary(const Signature& s, std::span<const Graph> family, const EstimatorParams& params);
Verdict estimate_general(const Signature& s, const std::set<std::uint64_t>& family, int q, const EstimatorParams& params);

enum class OracleKind { exact, sampled };

struct PipelineOptions {
  OracleKind oracle = OracleKind::exact;
  int sample_size = 12;
  int reps = 0;  // 0 = SampledPartitionOracle::default_reps
};

/// Slab-search signature, then estimate_hereditary at alpha - eps/2 and eps/2
/// against the forbidden family of the property. Small or oversized inputs
/// with n <= 7 are decided by dist_oracle at alpha - eps/2.
Verdict pipeline_hereditary(const Graph& g, const PropertySpec& p, const EstimatorParams& params,
                            const FinalSearchParams& search, std::uint64_t seed, const PipelineOptions& options = {});

/// Slab-search signature, then estimate_general at alpha - eps/2 and eps/2.
Verdict pipeline_general(const Graph& g, const std::set<std::uint64_t>& family, int q, const EstimatorParams& params,
                         const FinalSearchParams& search, std::uint64_t seed, const PipelineOptions& options = {});

}  // namespace pdist
