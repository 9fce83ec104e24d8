#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pdist/graph.hpp"
#include "pdist/metrics.hpp"
#include "pdist/parallel.hpp"

namespace pdist {

/// Whether pairs inside one part enter the irregularity sums. `exclude`
/// keeps them equal to G in the averaged graph so they cancel; `include`
/// compares them with the ordered-pair density of the part.
enum class DiagonalMode { exclude, include };

struct IrregularityOptions {
  CutMode mode = CutMode::exact;
  int exact_cap = 24;       // fk_irregularity: full subset scan up to this n
  int star_exact_cap = 16;  // fk_star_irregularity: subset scan of S up to this n
  int starts = 32;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
  DiagonalMode diagonal = DiagonalMode::exclude;
};

/// Value with a maximizing pair (S,T). `exact == false` marks a heuristic
/// lower bound.
struct Irregularity {
  double value = 0.0;
  bool exact = true;
  VertexSet s;
  VertexSet t;
};

/// Cross-part pairs carry d(V_i,V_j); pairs inside a part keep G(u,v), or get
/// the part's ordered-pair density under DiagonalMode::include.
WeightedGraph averaged_graph(const Graph& g, const Equipartition& a, DiagonalMode diagonal = DiagonalMode::exclude);

/// Deviation matrix D(x,y) = G(x,y) - G_A(x,y) over ordered pairs, row-major.
std::vector<double> deviation_matrix(const Graph& g, const Equipartition& a, DiagonalMode diagonal);

/// max over S,T of (1/n^2) |sum_{x in S, y in T} D(x,y)|.
Irregularity fk_irregularity(const Graph& g, const Equipartition& a, const IrregularityOptions& options = {});

/// max over S,T of (1/n^2) sum_{i,j} |sum_{x in S_i, y in T_j} D(x,y)|.
Irregularity fk_star_irregularity(const Graph& g, const Equipartition& a, const IrregularityOptions& options = {});

struct RefinementStep {
  Equipartition before;
  Equipartition after;
  double index_gain = 0.0;
  VertexSet witness_s;
  VertexSet witness_t;
};

/// std::nullopt when fk_star_irregularity(g,a) <= eps. Otherwise splits every
/// part along the witness atoms and cuts it into near-equal pieces. Throws
/// SizeError when the exact witness search is over its cap.
std::optional<RefinementStep> fk_refine(const Graph& g, const Equipartition& a, double eps,
                                        const IrregularityOptions& options = {});

// Kernels, exposed for tests and benchmarks. `d` is an n x n row-major matrix.

/// Unnormalized max over S,T of |sum D(x,y)|, with the maximizing S mask.
ArgMax full_cut_serial(std::span<const double> d, int n);
ArgMax full_cut_parallel(std::span<const double> d, int n);

/// Unnormalized FK-star maximum with the maximizing S mask.
ArgMax star_cut_serial(std::span<const double> d, const Equipartition& a);
ArgMax star_cut_parallel(std::span<const double> d, const Equipartition& a);

}  // namespace pdist
