#include "pdist/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"

namespace pdist {

namespace {

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

}  // namespace

// --- Graph ----------------------------------------------------------------

Graph::Graph(int n) : n_(n), words_(words_for(n)) {
  if (n < 1) throw DomainError("graph needs at least one vertex");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

Graph Graph::from_code(int n, std::uint64_t code) {
  Graph g(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (k < 64 && ((code >> k) & 1U)) g.set_edge(i, j);
  return g;
}

void Graph::check_vertex(int u) const {
  if (u < 0 || u >= n_) throw DomainError("vertex " + std::to_string(u) + " out of range");
}

void Graph::set_edge(int u, int v, bool on) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DomainError("self-loops are not allowed");
  auto flip = [&](int a, int b) {
    auto& w = bits_[static_cast<std::size_t>(a) * words_ + (static_cast<unsigned>(b) >> 6)];
    const std::uint64_t m = std::uint64_t{1} << (b & 63);
    w = on ? (w | m) : (w & ~m);
  };
  flip(u, v);
  flip(v, u);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::uint64_t Graph::code() const {
  if (pair_count(static_cast<std::size_t>(n_)) > 64) throw DomainError("graph too large for a 64-bit code");
  std::uint64_t c = 0;
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++k)
      if (has_edge(i, j)) c |= std::uint64_t{1} << k;
  return c;
}

Graph Graph::induced(std::span<const int> vertices) const {
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) h.set_edge(static_cast<int>(a), static_cast<int>(b));
  return h;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

// --- WeightedGraph ----------------------------------------------------------

WeightedGraph::WeightedGraph(int n) : n_(n) {
  if (n < 1) throw DomainError("weighted graph needs at least one vertex");
  w_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

WeightedGraph WeightedGraph::from_graph(const Graph& g) {
  WeightedGraph r(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.has_edge(u, v)) r.set(u, v, 1.0);
  return r;
}

void WeightedGraph::set(int u, int v, double weight) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("vertex out of range");
  if (u == v) throw DomainError("diagonal weights are fixed at 0");
  if (!(weight >= 0.0 && weight <= 1.0)) throw DomainError("weight outside [0,1]");
  w_[static_cast<std::size_t>(u) * n_ + v] = weight;
  w_[static_cast<std::size_t>(v) * n_ + u] = weight;
}

// --- VertexSet ----------------------------------------------------------

VertexSet::VertexSet(int n) : n_(n), words_(words_for(n), 0) {}

VertexSet VertexSet::of(int n, std::initializer_list<int> members) {
  return of(n, std::span<const int>(members.begin(), members.size()));
}

VertexSet VertexSet::of(int n, std::span<const int> members) {
  VertexSet s(n);
  for (int v : members) s.insert(v);
  return s;
}

VertexSet VertexSet::all(int n) {
  VertexSet s(n);
  for (int v = 0; v < n; ++v) s.insert(v);
  return s;
}

VertexSet VertexSet::from_mask(int n, std::uint64_t mask) {
  if (n > 64) throw DomainError("mask construction requires n <= 64");
  VertexSet s(n);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1U) s.insert(v);
  return s;
}

void VertexSet::insert(int v) {
  if (v < 0 || v >= n_) throw DomainError("vertex " + std::to_string(v) + " outside the vertex set universe");
  words_[static_cast<unsigned>(v) >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(int v) {
  if (v < 0 || v >= n_) throw DomainError("vertex outside the vertex set universe");
  words_[static_cast<unsigned>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::size_t VertexSet::size() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

// --- Equipartition ------------------------------------------------------

Equipartition::Equipartition(std::vector<int> part_of, int t) : part_of_(std::move(part_of)), t_(t) {
  const int n = static_cast<int>(part_of_.size());
  if (t < 1 || t > n) throw DomainError("equipartition needs 1 <= t <= n");
  parts_.assign(static_cast<std::size_t>(t), {});
  for (int v = 0; v < n; ++v) {
    const int p = part_of_[static_cast<std::size_t>(v)];
    if (p < 0 || p >= t) throw DomainError("part label out of range");
    parts_[static_cast<std::size_t>(p)].push_back(v);
  }
  std::size_t lo = parts_[0].size(), hi = lo;
  for (const auto& p : parts_) {
    lo = std::min(lo, p.size());
    hi = std::max(hi, p.size());
  }
  if (lo == 0) throw DomainError("equipartition has an empty part");
  if (hi - lo > 1) throw DomainError("part sizes differ by more than one");
}

Equipartition Equipartition::relabeled(std::span<const int> perm) const {
  std::vector<int> labels(part_of_.size());
  for (std::size_t v = 0; v < part_of_.size(); ++v) labels[v] = perm[static_cast<std::size_t>(part_of_[v])];
  return Equipartition(std::move(labels), t_);
}

// --- densities ------------------------------------------------------------

namespace {

void require_nonempty(const VertexSet& x, const VertexSet& y) {
  if (x.empty() || y.empty()) throw DomainError("density needs nonempty vertex sets");
}

}  // namespace

std::size_t edge_count_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.universe() != g.n() || y.universe() != g.n()) throw DomainError("vertex set universe does not match graph");
  std::size_t e = 0;
  for (int u : x.members())
    for (int v : y.members())
      if (u != v && g.has_edge(u, v)) ++e;
  return e;
}

double density(const Graph& g, const VertexSet& x, const VertexSet& y) {
  require_nonempty(x, y);
  return static_cast<double>(edge_count_between(g, x, y)) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

double density(const WeightedGraph& r, const VertexSet& x, const VertexSet& y) {
  require_nonempty(x, y);
  if (x.universe() != r.n() || y.universe() != r.n()) throw DomainError("vertex set universe does not match graph");
  double e = 0.0;
  for (int u : x.members())
    for (int v : y.members())
      if (u != v) e += r.at(u, v);
  return e / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

std::size_t edit_count(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw DomainError("edit distance needs graphs on the same vertex count");
  std::size_t diff = 0;
  for (int u = 0; u < g.n(); ++u) {
    auto a = g.row(u), b = h.row(u);
    for (std::size_t w = 0; w < a.size(); ++w) diff += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  }
  return diff / 2;
}

double edit_distance(const Graph& g, const Graph& h) {
  const double n = g.n();
  return static_cast<double>(edit_count(g, h)) / (n * n);
}

std::vector<std::size_t> block_edge_counts(const Graph& g, const Equipartition& a) {
  if (a.n() != g.n()) throw DomainError("partition and graph disagree on n");
  const auto t = static_cast<std::size_t>(a.t());
  const std::size_t words = g.words_per_row();
  std::vector<std::uint64_t> masks(t * words, 0);
  for (int v = 0; v < g.n(); ++v)
    masks[static_cast<std::size_t>(a.part_of(v)) * words + (static_cast<unsigned>(v) >> 6)] |= std::uint64_t{1} << (v & 63);
  std::vector<std::size_t> e(t * t, 0);
  for (int u = 0; u < g.n(); ++u) {
    const auto row = g.row(u);
    const auto pu = static_cast<std::size_t>(a.part_of(u));
    for (std::size_t j = 0; j < t; ++j) {
      std::size_t c = 0;
      for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(row[w] & masks[j * words + w]));
      e[pu * t + j] += c;
    }
  }
  return e;
}

std::vector<double> block_densities(const Graph& g, const Equipartition& a) {
  const auto e = block_edge_counts(g, a);
  const auto t = static_cast<std::size_t>(a.t());
  std::vector<double> d(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      d[i * t + j] = static_cast<double>(e[i * t + j]) /
                     (static_cast<double>(a.part_size(static_cast<int>(i))) * static_cast<double>(a.part_size(static_cast<int>(j))));
  return d;
}

// --- equipartitions -----------------------------------------------------------

Equipartition canonical_equipartition(int n, int t) {
  if (t < 1 || t > n) throw DomainError("canonical equipartition needs 1 <= t <= n");
  const int small = n / t, extra = n % t;
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < t; ++p) {
    const int size = small + (p < extra ? 1 : 0);
    for (int k = 0; k < size; ++k) labels.push_back(p);
  }
  return Equipartition(std::move(labels), t);
}

namespace {

struct EquipartitionWalker {
  int n, s, small, big, bigs_allowed;
  std::vector<int> labels, sizes;
  int opened = 0, bigs = 0;
  const std::function<bool(std::span<const int>)>& visit;

  bool feasible(int next_vertex) const {
    int need = (s - opened) * small;
    for (int p = 0; p < opened; ++p) need += std::max(0, small - sizes[static_cast<std::size_t>(p)]);
    return need <= n - next_vertex;
  }

  // Returns false when the visitor asked to stop.
  bool place(int v) {
    if (v == n) return opened == s ? visit(labels) : true;
    for (int p = 0; p <= opened && p < s; ++p) {
      const bool fresh = p == opened;
      int& size = sizes[static_cast<std::size_t>(p)];
      if (size >= big) continue;
      const bool becomes_big = big > small && size + 1 == big;
      if (becomes_big && bigs >= bigs_allowed) continue;
      ++size;
      if (becomes_big) ++bigs;
      if (fresh) ++opened;
      labels[static_cast<std::size_t>(v)] = p;
      bool keep_going = true;
      if (feasible(v + 1)) keep_going = place(v + 1);
      if (fresh) --opened;
      if (becomes_big) --bigs;
      --size;
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

void for_each_equipartition(int n, int s, const std::function<bool(std::span<const int>)>& visit) {
  if (s < 1 || s > n) throw DomainError("equipartition enumeration needs 1 <= s <= n");
  EquipartitionWalker w{n, s, n / s, (n + s - 1) / s, n % s, std::vector<int>(static_cast<std::size_t>(n), 0),
                        std::vector<int>(static_cast<std::size_t>(s), 0), 0, 0, visit};
  w.place(0);
}

std::vector<Equipartition> enumerate_equipartitions(int n, int s) {
  std::vector<Equipartition> out;
  for_each_equipartition(n, s, [&](std::span<const int> labels) {
    out.emplace_back(std::vector<int>(labels.begin(), labels.end()), s);
    return true;
  });
  return out;
}

std::uint64_t equipartition_count(int n, int s) {
  if (s < 1 || s > n) throw DomainError("equipartition count needs 1 <= s <= n");
  // Multiply/divide incrementally in long double to stay exact for small n.
  const int small = n / s, r = n % s;
  long double value = 1.0L;
  int next = 1;
  auto multiply_upto = [&](int k) {
    for (; next <= k; ++next) value *= next;
  };
  multiply_upto(n);
  auto divide_factorial = [&](int k) {
    for (int i = 2; i <= k; ++i) value /= i;
  };
  for (int p = 0; p < s; ++p) divide_factorial(small + (p < r ? 1 : 0));
  divide_factorial(r);
  divide_factorial(s - r);
  return static_cast<std::uint64_t>(value + 0.5L);
}

bool is_refinement(const Equipartition& b, const Equipartition& a) {
  if (a.n() != b.n()) throw DomainError("refinement check needs partitions of the same vertex set");
  for (const auto& part : b.parts()) {
    const int host = a.part_of(part.front());
    for (int v : part)
      if (a.part_of(v) != host) return false;
  }
  return true;
}

// --- fixtures -----------------------------------------------------------

Graph blowup(const Graph& h, std::span<const int> sizes, const std::vector<bool>& cliques) {
  if (sizes.size() != static_cast<std::size_t>(h.n()) || cliques.size() != sizes.size())
    throw DomainError("blowup needs one size and one clique flag per vertex");
  std::vector<int> owner;
  for (int i = 0; i < h.n(); ++i) {
    if (sizes[static_cast<std::size_t>(i)] < 1) throw DomainError("blowup class sizes must be positive");
    for (int k = 0; k < sizes[static_cast<std::size_t>(i)]; ++k) owner.push_back(i);
  }
  Graph g(static_cast<int>(owner.size()));
  for (std::size_t u = 0; u < owner.size(); ++u)
    for (std::size_t v = u + 1; v < owner.size(); ++v) {
      const int a = owner[u], b = owner[v];
      const bool edge = a == b ? static_cast<bool>(cliques[static_cast<std::size_t>(a)]) : h.has_edge(a, b);
      if (edge) g.set_edge(static_cast<int>(u), static_cast<int>(v));
    }
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
  return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n && n > 2; ++u) g.set_edge(u, (u + 1) % n);
  if (n == 2) g.set_edge(0, 1);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int u = 0; u + 1 < n; ++u) g.set_edge(u, u + 1);
  return g;
}

Graph half_graph(int m) {
  Graph g(2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) g.set_edge(i, m + j);
  return g;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.set_edge(u, v);
  return g;
}

WeightedGraph random_weighted_graph(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  WeightedGraph r(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) r.set(u, v, unit(rng));
  return r;
}

// --- text format ------------------------------------------------------------

namespace {

template <typename T>
T read_number(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) throw ParseError(std::string("expected ") + what);
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
  const auto n = read_number<long long>(in, "vertex count");
  const auto m = read_number<long long>(in, "edge count");
  if (n < 1 || m < 0) throw ParseError("bad graph header");
  if (static_cast<unsigned long long>(m) > pair_count(static_cast<std::size_t>(n))) throw ParseError("more edges than vertex pairs");
  Graph g(static_cast<int>(n));
  for (long long k = 0; k < m; ++k) {
    const auto u = read_number<long long>(in, "edge endpoint");
    const auto v = read_number<long long>(in, "edge endpoint");
    if (!(0 <= u && u < v && v < n)) throw ParseError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") violates 0 <= u < v < n");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) throw ParseError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    g.set_edge(static_cast<int>(u), static_cast<int>(v));
  }
  std::string rest;
  if (in >> rest) throw ParseError("trailing content after the edge list");
  return g;
}

Graph read_graph_file(const std::string& path) {
  auto in = open_input(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

Equipartition read_partition(std::istream& in) {
  const auto n = read_number<int>(in, "vertex count");
  const auto t = read_number<int>(in, "part count");
  if (n < 1) throw ParseError("bad partition header");
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = read_number<int>(in, "part label");
  try {
    return Equipartition(std::move(labels), t);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid equipartition: ") + e.what());
  }
}

Equipartition read_partition_file(const std::string& path) {
  auto in = open_input(path);
  return read_partition(in);
}

void write_partition(std::ostream& out, const Equipartition& a) {
  out << a.n() << ' ' << a.t() << '\n';
  for (int v = 0; v < a.n(); ++v) out << a.part_of(v) << (v + 1 < a.n() ? ' ' : '\n');
}

}  // namespace pdist
