#include "pdist/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"
#include "pdist/signature.hpp"

namespace pdist {

namespace {

double signed_score(std::span<const double> col) {
  double pos = 0.0, neg = 0.0;
  for (double c : col) (c > 0.0 ? pos : neg) += std::abs(c);
  return std::max(pos, neg);
}

// Per-part view used by the FK-star kernels.
struct Blocks {
  int n;
  int t;
  std::vector<std::vector<int>> members;
  std::vector<int> part_of;

  explicit Blocks(const Equipartition& a)
      : n(a.n()), t(a.t()), members(a.parts()), part_of(a.labels().begin(), a.labels().end()) {}
};

// c[i*n + y] = sum_{x in S, part(x)=i} D(x,y)
void column_sums(std::span<const double> d, const Blocks& b, std::uint64_t s_mask, std::vector<double>& c) {
  const auto N = static_cast<std::size_t>(b.n);
  std::fill(c.begin(), c.end(), 0.0);
  for (std::size_t x = 0; x < N; ++x) {
    if (!((s_mask >> x) & 1U)) continue;
    const auto i = static_cast<std::size_t>(b.part_of[x]);
    for (std::size_t y = 0; y < N; ++y) c[i * N + y] += d[x * N + y];
  }
}

// Best T_j inside part j by direct evaluation of every subset; first maximum in
// increasing mask order.
std::pair<double, std::uint64_t> best_block_direct(const std::vector<double>& c, const Blocks& b, int j) {
  const auto N = static_cast<std::size_t>(b.n);
  const auto& vs = b.members[static_cast<std::size_t>(j)];
  double best = 0.0;
  std::uint64_t arg = 0;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << vs.size()); ++m) {
    double v = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(b.t); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < vs.size(); ++k)
        if ((m >> k) & 1U) s += c[i * N + static_cast<std::size_t>(vs[k])];
      v += std::abs(s);
    }
    if (v > best) {
      best = v;
      arg = m;
    }
  }
  return {best, arg};
}

// Same maximum by Gray-code updates of the t running block sums.
double best_block_gray(const std::vector<double>& c, const Blocks& b, int j, std::vector<double>& sums) {
  const auto N = static_cast<std::size_t>(b.n);
  const auto T = static_cast<std::size_t>(b.t);
  const auto& vs = b.members[static_cast<std::size_t>(j)];
  std::fill(sums.begin(), sums.end(), 0.0);
  std::uint64_t gray = 0;
  double best = 0.0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << vs.size()); ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    const double sign = ((gray >> bit) & 1U) ? -1.0 : 1.0;
    gray ^= std::uint64_t{1} << bit;
    const auto y = static_cast<std::size_t>(vs[bit]);
    double v = 0.0;
    for (std::size_t i = 0; i < T; ++i) {
      sums[i] += sign * c[i * N + y];
      v += std::abs(sums[i]);
    }
    best = std::max(best, v);
  }
  return best;
}

void require_star_exact(const Equipartition& a, const IrregularityOptions& options) {
  if (a.n() > options.star_exact_cap || a.n() > 62)
    throw SizeError("fk_star exact mode supports n <= " + std::to_string(options.star_exact_cap));
}

// T maximizing the FK-star sum for a fixed S, assembled from per-part optima.
VertexSet star_partner(std::span<const double> d, const Blocks& b, std::uint64_t s_mask) {
  std::vector<double> c(static_cast<std::size_t>(b.t * b.n));
  column_sums(d, b, s_mask, c);
  VertexSet t(b.n);
  for (int j = 0; j < b.t; ++j) {
    const auto [value, m] = best_block_direct(c, b, j);
    const auto& vs = b.members[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < vs.size(); ++k)
      if ((m >> k) & 1U) t.insert(vs[k]);
  }
  return t;
}

double star_value(std::span<const double> d, const Blocks& b, const VertexSet& s, const VertexSet& t) {
  const auto N = static_cast<std::size_t>(b.n);
  const auto T = static_cast<std::size_t>(b.t);
  std::vector<double> block(T * T, 0.0);
  for (std::size_t x = 0; x < N; ++x) {
    if (!s.contains(static_cast<int>(x))) continue;
    for (std::size_t y = 0; y < N; ++y)
      if (t.contains(static_cast<int>(y)))
        block[static_cast<std::size_t>(b.part_of[x]) * T + static_cast<std::size_t>(b.part_of[y])] += d[x * N + y];
  }
  double v = 0.0;
  for (double e : block) v += std::abs(e);
  return v;
}

// Single-vertex flips of `var` while the FK-star sum improves, `fixed` held.
void star_local_opt(std::span<const double> d, const Blocks& b, const VertexSet& fixed, VertexSet& var) {
  const auto N = static_cast<std::size_t>(b.n);
  const auto T = static_cast<std::size_t>(b.t);
  // row[i*n + y] = sum_{x in fixed, part i} D(x,y); block[i*t + j] over y in var.
  std::vector<double> row(T * N, 0.0);
  for (std::size_t x = 0; x < N; ++x)
    if (fixed.contains(static_cast<int>(x)))
      for (std::size_t y = 0; y < N; ++y) row[static_cast<std::size_t>(b.part_of[x]) * N + y] += d[x * N + y];
  std::vector<double> block(T * T, 0.0);
  for (std::size_t y = 0; y < N; ++y)
    if (var.contains(static_cast<int>(y)))
      for (std::size_t i = 0; i < T; ++i) block[i * T + static_cast<std::size_t>(b.part_of[y])] += row[i * N + y];
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t y = 0; y < N; ++y) {
      const auto j = static_cast<std::size_t>(b.part_of[y]);
      const double sign = var.contains(static_cast<int>(y)) ? -1.0 : 1.0;
      double delta = 0.0;
      for (std::size_t i = 0; i < T; ++i)
        delta += std::abs(block[i * T + j] + sign * row[i * N + y]) - std::abs(block[i * T + j]);
      if (delta > 1e-12) {
        for (std::size_t i = 0; i < T; ++i) block[i * T + j] += sign * row[i * N + y];
        if (sign > 0) var.insert(static_cast<int>(y));
        else var.erase(static_cast<int>(y));
        improved = true;
      }
    }
  }
}

VertexSet random_set(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  VertexSet s(n);
  for (int v = 0; v < n; ++v)
    if (coin(rng)) s.insert(v);
  return s;
}

}  // namespace

WeightedGraph averaged_graph(const Graph& g, const Equipartition& a, DiagonalMode diagonal) {
  if (g.n() != a.n()) throw DomainError("partition and graph sizes differ");
  const auto d = block_densities(g, a);
  const auto t = static_cast<std::size_t>(a.t());
  WeightedGraph r(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      const auto i = static_cast<std::size_t>(a.part_of(u)), j = static_cast<std::size_t>(a.part_of(v));
      if (i != j || diagonal == DiagonalMode::include) r.set(u, v, d[i * t + j]);
      else r.set(u, v, g.has_edge(u, v) ? 1.0 : 0.0);
    }
  return r;
}

std::vector<double> deviation_matrix(const Graph& g, const Equipartition& a, DiagonalMode diagonal) {
  if (g.n() != a.n()) throw DomainError("partition and graph sizes differ");
  const auto d = block_densities(g, a);
  const auto t = static_cast<std::size_t>(a.t());
  const auto N = static_cast<std::size_t>(g.n());
  std::vector<double> out(N * N, 0.0);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      const auto i = static_cast<std::size_t>(a.part_of(static_cast<int>(x)));
      const auto j = static_cast<std::size_t>(a.part_of(static_cast<int>(y)));
      if (i == j && diagonal == DiagonalMode::exclude) continue;
      const double e = x != y && g.has_edge(static_cast<int>(x), static_cast<int>(y)) ? 1.0 : 0.0;
      out[x * N + y] = e - d[i * t + j];
    }
  return out;
}

ArgMax full_cut_serial(std::span<const double> d, int n) {
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> col(N);
  ArgMax best;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t x = 0; x < N; ++x)
      if ((s >> x) & 1U)
        for (std::size_t y = 0; y < N; ++y) col[y] += d[x * N + y];
    best.offer(signed_score(col), s);
  }
  return best;
}

ArgMax full_cut_parallel(std::span<const double> d, int n) {
  const auto N = static_cast<std::size_t>(n);
  const int high_bits = std::min(n, 10);
  const int low_bits = n - high_bits;
  const long long chunks = 1LL << high_bits;
  std::vector<ArgMax> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 8)
  for (long long chunk = 0; chunk < chunks; ++chunk) {
    std::uint64_t s = static_cast<std::uint64_t>(chunk) << low_bits;
    std::vector<double> col(N, 0.0);
    for (std::size_t x = 0; x < N; ++x)
      if ((s >> x) & 1U)
        for (std::size_t y = 0; y < N; ++y) col[y] += d[x * N + y];
    ArgMax local;
    local.offer(signed_score(col), s);
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << low_bits); ++k) {
      const auto b = static_cast<std::size_t>(std::countr_zero(k));
      const double sign = ((s >> b) & 1U) ? -1.0 : 1.0;
      s ^= std::uint64_t{1} << b;
      for (std::size_t y = 0; y < N; ++y) col[y] += sign * d[b * N + y];
      local.offer(signed_score(col), s);
    }
    partial[static_cast<std::size_t>(chunk)] = local;
  }
  ArgMax best;
  for (const auto& p : partial) best.merge(p);
  return best;
}

ArgMax star_cut_serial(std::span<const double> d, const Equipartition& a) {
  const Blocks b(a);
  std::vector<double> c(static_cast<std::size_t>(b.t * b.n));
  ArgMax best;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << b.n); ++s) {
    column_sums(d, b, s, c);
    double v = 0.0;
    for (int j = 0; j < b.t; ++j) v += best_block_direct(c, b, j).first;
    best.offer(v, s);
  }
  return best;
}

ArgMax star_cut_parallel(std::span<const double> d, const Equipartition& a) {
  const Blocks b(a);
  const auto N = static_cast<std::size_t>(b.n);
  const int high_bits = std::min(b.n, 10);
  const int low_bits = b.n - high_bits;
  const long long chunks = 1LL << high_bits;
  std::vector<ArgMax> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 4)
  for (long long chunk = 0; chunk < chunks; ++chunk) {
    std::uint64_t s = static_cast<std::uint64_t>(chunk) << low_bits;
    std::vector<double> c(static_cast<std::size_t>(b.t) * N);
    std::vector<double> sums(static_cast<std::size_t>(b.t));
    column_sums(d, b, s, c);
    auto score = [&] {
      double v = 0.0;
      for (int j = 0; j < b.t; ++j) v += best_block_gray(c, b, j, sums);
      return v;
    };
    ArgMax local;
    local.offer(score(), s);
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << low_bits); ++k) {
      const auto x = static_cast<std::size_t>(std::countr_zero(k));
      const double sign = ((s >> x) & 1U) ? -1.0 : 1.0;
      s ^= std::uint64_t{1} << x;
      const auto i = static_cast<std::size_t>(b.part_of[x]);
      for (std::size_t y = 0; y < N; ++y) c[i * N + y] += sign * d[x * N + y];
      local.offer(score(), s);
    }
    partial[static_cast<std::size_t>(chunk)] = local;
  }
  ArgMax best;
  for (const auto& p : partial) best.merge(p);
  return best;
}

Irregularity fk_irregularity(const Graph& g, const Equipartition& a, const IrregularityOptions& options) {
  const auto d = deviation_matrix(g, a, options.diagonal);
  const int n = g.n();
  const auto N = static_cast<std::size_t>(n);
  const double norm = static_cast<double>(n) * n;

  // T partner of S: the sign class of the column sums with the larger mass.
  auto partner = [&](const VertexSet& s) {
    std::vector<double> col(N, 0.0);
    for (int x : s.members())
      for (std::size_t y = 0; y < N; ++y) col[y] += d[static_cast<std::size_t>(x) * N + y];
    double pos = 0.0, neg = 0.0;
    for (double c : col) (c > 0.0 ? pos : neg) += std::abs(c);
    VertexSet t(n);
    for (std::size_t y = 0; y < N; ++y)
      if (pos >= neg ? col[y] > 0.0 : col[y] < 0.0) t.insert(static_cast<int>(y));
    return std::pair{t, std::max(pos, neg)};
  };

  if (options.mode == CutMode::exact) {
    if (n > options.exact_cap || n > 62)
      throw SizeError("fk_irregularity exact mode supports n <= " + std::to_string(options.exact_cap));
    const ArgMax best = options.exec == Exec::serial ? full_cut_serial(d, n) : full_cut_parallel(d, n);
    const VertexSet s = VertexSet::from_mask(n, best.index);
    return {best.value / norm, true, s, partner(s).first};
  }

  Rng rng(options.seed);
  Irregularity out{0.0, false, VertexSet(n), VertexSet(n)};
  for (int start = 0; start < options.starts; ++start) {
    VertexSet s = random_set(n, rng);
    double last = -1.0;
    for (int round = 0; round < 4 * n + 8; ++round) {
      auto [t, value] = partner(s);
      auto [s_next, value2] = partner(t);
      if (value2 > out.value * norm) out = {value2 / norm, false, s_next, t};
      if (value2 <= last + 1e-15) break;
      last = value2;
      s = s_next;
    }
  }
  return out;
}

Irregularity fk_star_irregularity(const Graph& g, const Equipartition& a, const IrregularityOptions& options) {
  const auto d = deviation_matrix(g, a, options.diagonal);
  const int n = g.n();
  const double norm = static_cast<double>(n) * n;
  const Blocks b(a);

  if (options.mode == CutMode::exact) {
    require_star_exact(a, options);
    const ArgMax best = options.exec == Exec::serial ? star_cut_serial(d, a) : star_cut_parallel(d, a);
    const VertexSet s = VertexSet::from_mask(n, best.index);
    return {best.value / norm, true, s, star_partner(d, b, best.index)};
  }

  Rng rng(options.seed);
  Irregularity out{0.0, false, VertexSet(n), VertexSet(n)};
  for (int start = 0; start < options.starts; ++start) {
    VertexSet s = random_set(n, rng);
    VertexSet t = random_set(n, rng);
    double last = -1.0;
    for (int round = 0; round < 50; ++round) {
      star_local_opt(d, b, s, t);
      star_local_opt(d, b, t, s);
      const double value = star_value(d, b, s, t);
      if (value > out.value * norm) out = {value / norm, false, s, t};
      if (value <= last + 1e-15) break;
      last = value;
    }
  }
  return out;
}

std::optional<RefinementStep> fk_refine(const Graph& g, const Equipartition& a, double eps,
                                        const IrregularityOptions& options) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  IrregularityOptions exact = options;
  exact.mode = CutMode::exact;
  const Irregularity w = fk_star_irregularity(g, a, exact);
  if (w.value <= eps) return std::nullopt;

  // Order each part by atom (in S, in T), then cut it into p near-equal runs.
  auto atom = [&](int v) { return (w.s.contains(v) ? 2 : 0) + (w.t.contains(v) ? 1 : 0); };
  std::size_t p = 1;
  std::size_t smallest = static_cast<std::size_t>(a.n());
  for (const auto& part : a.parts()) {
    bool seen[4] = {};
    for (int v : part) seen[atom(v)] = true;
    p = std::max(p, static_cast<std::size_t>(std::count(seen, seen + 4, true)));
    smallest = std::min(smallest, part.size());
  }
  p = std::min(p, smallest);

  std::vector<int> labels(static_cast<std::size_t>(a.n()));
  int next = 0;
  for (const auto& part : a.parts()) {
    std::vector<int> order = part;
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) { return atom(u) < atom(v); });
    const std::size_t m = order.size();
    std::size_t pos = 0;
    for (std::size_t piece = 0; piece < p; ++piece) {
      const std::size_t len = m / p + (piece < m % p ? 1 : 0);
      for (std::size_t k = 0; k < len; ++k) labels[static_cast<std::size_t>(order[pos++])] = next;
      ++next;
    }
  }
  Equipartition after(std::move(labels), next);
  const double gain = index_of_partition(g, after) - index_of_partition(g, a);
  return RefinementStep{a, std::move(after), gain, w.s, w.t};
}

}  // namespace pdist
