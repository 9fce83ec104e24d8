#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pdist {

/// Number of unordered pairs {i,j} on t points.
constexpr std::size_t pair_count(std::size_t t) { return t * (t - (t > 0 ? 1 : 0)) / 2; }

/// Lexicographic index of the pair (i,j), i<j, among the C(t,2) pairs
/// (0,1),(0,2),...,(0,t-1),(1,2),...
constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t t) {
  return i * (2 * t - i - 1) / 2 + (j - i - 1);
}

/// Simple undirected graph on vertices [0,n) stored as a symmetric bit matrix.
class Graph {
 public:
  explicit Graph(int n = 1);

  /// Decodes a labeled-graph code: bit k set iff the k-th lexicographic pair is an edge.
  static Graph from_code(int n, std::uint64_t code);

  int n() const { return n_; }
  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] >> (v & 63)) & 1U;
  }
  void set_edge(int u, int v, bool on = true);
  void toggle_edge(int u, int v) { set_edge(u, v, !has_edge(u, v)); }

  std::size_t edge_count() const;
  std::span<const std::uint64_t> row(int u) const {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  /// Labeled-graph code; requires C(n,2) <= 64.
  std::uint64_t code() const;

  /// Subgraph induced on `vertices`, relabeled 0..k-1 in the given order.
  Graph induced(std::span<const int> vertices) const;

  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  void check_vertex(int u) const;

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Symmetric [0,1]-weighted complete graph with zero diagonal.
class WeightedGraph {
 public:
  explicit WeightedGraph(int n = 1);
  static WeightedGraph from_graph(const Graph& g);

  int n() const { return n_; }
  double at(int u, int v) const { return w_[static_cast<std::size_t>(u) * n_ + v]; }
  void set(int u, int v, double weight);
  std::span<const double> data() const { return w_; }

 private:
  int n_;
  std::vector<double> w_;
};

/// Subset of [0,n) as a membership bitmask.
class VertexSet {
 public:
  explicit VertexSet(int n = 0);
  static VertexSet of(int n, std::initializer_list<int> members);
  static VertexSet of(int n, std::span<const int> members);
  static VertexSet all(int n);
  /// Low n bits of `mask`; requires n <= 64.
  static VertexSet from_mask(int n, std::uint64_t mask);

  int universe() const { return n_; }
  bool contains(int v) const { return (words_[static_cast<unsigned>(v) >> 6] >> (v & 63)) & 1U; }
  void insert(int v);
  void erase(int v);
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<int> members() const;

  bool operator==(const VertexSet& other) const = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// Vertex partition into t nonempty parts whose sizes differ by at most one.
class Equipartition {
 public:
  /// Validates the equipartition invariants; throws DomainError on violation.
  Equipartition(std::vector<int> part_of, int t);

  int n() const { return static_cast<int>(part_of_.size()); }
  int t() const { return t_; }
  int part_of(int v) const { return part_of_[static_cast<std::size_t>(v)]; }
  std::span<const int> labels() const { return part_of_; }
  const std::vector<int>& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  std::size_t part_size(int i) const { return parts_[static_cast<std::size_t>(i)].size(); }

  /// Same partition with part i renamed to perm[i].
  Equipartition relabeled(std::span<const int> perm) const;

  bool operator==(const Equipartition& other) const { return part_of_ == other.part_of_ && t_ == other.t_; }

 private:
  std::vector<int> part_of_;
  int t_;
  std::vector<std::vector<int>> parts_;
};

// --- densities and distances -------------------------------------------

/// e(X,Y)/(|X||Y|) with e summed over ordered pairs (x,y), x in X, y in Y, x != y.
double density(const Graph& g, const VertexSet& x, const VertexSet& y);
double density(const WeightedGraph& r, const VertexSet& x, const VertexSet& y);

/// Number of ordered pairs (x,y), x in X, y in Y, x != y, that are edges.
std::size_t edge_count_between(const Graph& g, const VertexSet& x, const VertexSet& y);

/// |E(G) xor E(H)| / n^2.
double edit_distance(const Graph& g, const Graph& h);
std::size_t edit_count(const Graph& g, const Graph& h);

/// Block edge counts e(V_i,V_j) for an equipartition; the diagonal holds the
/// ordered-pair count (twice the number of edges inside V_i).
std::vector<std::size_t> block_edge_counts(const Graph& g, const Equipartition& a);

/// Cross-part density matrix d(V_i,V_j) (t x t, row-major). Diagonal entries
/// use the ordered-pair convention e(V_i,V_i)/|V_i|^2.
std::vector<double> block_densities(const Graph& g, const Equipartition& a);

// --- equipartitions ---------------------------------------------------

/// Parts 0..(n mod t)-1 receive ceil(n/t) consecutive vertices, the rest floor(n/t).
Equipartition canonical_equipartition(int n, int t);

/// Visits every unlabeled equipartition of [0,n) into s parts exactly once.
/// Parts are numbered by their minimum element; visiting order is
/// lexicographic in the label sequence. The callback may return false to stop.
void for_each_equipartition(int n, int s, const std::function<bool(std::span<const int>)>& visit);

/// Materialized form of for_each_equipartition.
std::vector<Equipartition> enumerate_equipartitions(int n, int s);

/// n! / (prod |V_i|! * r! * (s-r)!) where r = n mod s.
std::uint64_t equipartition_count(int n, int s);

/// True iff every part of b lies inside one part of a.
bool is_refinement(const Equipartition& b, const Equipartition& a);

// --- fixtures -----------------------------------------------------------

/// Replaces vertex i of h by a class of sizes[i] vertices (a clique iff
/// cliques[i]); classes i,j are completely joined iff ij is an edge of h.
Graph blowup(const Graph& h, std::span<const int> sizes, const std::vector<bool>& cliques);

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
/// Bipartite half graph on 2m vertices: a_i ~ b_j iff i <= j.
Graph half_graph(int m);
/// G(n,p) driven by `seed`.
Graph random_graph(int n, double p, std::uint64_t seed);
WeightedGraph random_weighted_graph(int n, std::uint64_t seed);

// --- text format --------------------------------------------------------

/// "n m" then m lines "u v" with u < v. Throws ParseError.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

/// "n t" then n part labels. Throws ParseError.
Equipartition read_partition(std::istream& in);
Equipartition read_partition_file(const std::string& path);
void write_partition(std::ostream& out, const Equipartition& a);

}  // namespace pdist
