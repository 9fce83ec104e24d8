#include "pdist/homstats.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"

namespace pdist {

namespace {

long double power(long double base, int e) {
  long double r = 1.0L;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

long double falling(int n, int q) {
  long double r = 1.0L;
  for (int i = 0; i < q; ++i) r *= static_cast<long double>(n - i);
  return r;
}

// Sum of product weights over all extensions of a partial map.
class MapWalker {
 public:
  MapWalker(const Graph& f, const WeightedGraph& r, bool injective)
      : f_(f), r_(r), injective_(injective), image_(static_cast<std::size_t>(f.n())),
        used_(static_cast<std::size_t>(r.n()), 0) {}

  double from_first(int v0) {
    image_[0] = v0;
    used_[static_cast<std::size_t>(v0)] = 1;
    const double s = walk(1, 1.0);
    used_[static_cast<std::size_t>(v0)] = 0;
    return s;
  }

 private:
  double walk(int depth, double weight) {
    if (depth == f_.n()) return weight;
    double sum = 0.0;
    for (int v = 0; v < r_.n(); ++v) {
      if (injective_ && used_[static_cast<std::size_t>(v)]) continue;
      double w = weight;
      for (int e = 0; e < depth && w != 0.0; ++e) {
        const int u = image_[static_cast<std::size_t>(e)];
        const double x = u == v ? 0.0 : r_.at(u, v);
        w *= f_.has_edge(e, depth) ? x : 1.0 - x;
      }
      if (w == 0.0) continue;
      image_[static_cast<std::size_t>(depth)] = v;
      ++used_[static_cast<std::size_t>(v)];
      sum += walk(depth + 1, w);
      --used_[static_cast<std::size_t>(v)];
    }
    return sum;
  }

  const Graph& f_;
  const WeightedGraph& r_;
  bool injective_;
  std::vector<int> image_;
  std::vector<int> used_;
};

double map_weight(const Graph& f, const WeightedGraph& r, std::span<const int> image, bool injective) {
  double w = 1.0;
  for (int a = 0; a < f.n() && w != 0.0; ++a)
    for (int b = a + 1; b < f.n(); ++b) {
      const int u = image[static_cast<std::size_t>(a)], v = image[static_cast<std::size_t>(b)];
      if (u == v && injective) return 0.0;
      const double x = u == v ? 0.0 : r.at(u, v);
      w *= f.has_edge(a, b) ? x : 1.0 - x;
    }
  return w;
}

DensityEstimate map_average(const Graph& f, const WeightedGraph& r, const HomOptions& options, bool injective) {
  const int h = f.n(), k = r.n();
  if (injective && h > k) return {0.0, true, 0.0, 0};
  const long double total = power(k, h);
  if (total <= static_cast<long double>(options.exact_cap)) {
    std::vector<double> by_first(static_cast<std::size_t>(k), 0.0);
    if (options.exec == Exec::serial) {
      MapWalker walker(f, r, injective);
      for (int v = 0; v < k; ++v) by_first[static_cast<std::size_t>(v)] = walker.from_first(v);
    } else {
#pragma omp parallel
      {
        MapWalker walker(f, r, injective);
#pragma omp for schedule(dynamic, 1)
        for (int v = 0; v < k; ++v) by_first[static_cast<std::size_t>(v)] = walker.from_first(v);
      }
    }
    const double sum = std::accumulate(by_first.begin(), by_first.end(), 0.0);
    return {sum / static_cast<double>(total), true, 0.0, static_cast<std::uint64_t>(total)};
  }
  if (options.samples == 0) throw DomainError("sampling needs at least one map");
  Rng rng(options.seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> image(static_cast<std::size_t>(h));
  double sum = 0.0;
  for (std::uint64_t m = 0; m < options.samples; ++m) {
    for (auto& v : image) v = pick(rng);
    sum += map_weight(f, r, image, injective);
  }
  return {sum / static_cast<double>(options.samples), false, chernoff_radius(options.samples), options.samples};
}

void require_code_size(int q) {
  if (q < 1) throw DomainError("q must be positive");
  if (pair_count(static_cast<std::size_t>(q)) > 64) throw SizeError("labeled-graph codes support q <= 11");
}

}  // namespace

double chernoff_radius(std::uint64_t m) { return std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(m))); }

DensityEstimate ind_induced(const Graph& f, const WeightedGraph& r, const HomOptions& options) {
  return map_average(f, r, options, true);
}

DensityEstimate ind_prime(const Graph& f, const WeightedGraph& r, const HomOptions& options) {
  return map_average(f, r, options, false);
}

StatisticEstimate q_statistic(const Graph& g, int q, const HomOptions& options) {
  const int n = g.n();
  if (q > n) throw DomainError("q exceeds the number of vertices");
  require_code_size(q);
  const auto Q = static_cast<std::size_t>(q);
  const long double total = falling(n, q);

  // Code of the graph induced on seq[0..q).
  auto code_of = [&](std::span<const int> seq) {
    std::uint64_t code = 0;
    for (std::size_t a = 0; a < Q; ++a)
      for (std::size_t b = a + 1; b < Q; ++b)
        if (g.has_edge(seq[a], seq[b])) code |= std::uint64_t{1} << pair_index(a, b, Q);
    return code;
  };

  StatisticEstimate out{GraphDistribution{q, {}}, true, 0};
  if (total <= static_cast<long double>(options.exact_cap)) {
    std::vector<std::map<std::uint64_t, std::uint64_t>> by_first(static_cast<std::size_t>(n));
    auto scan_first = [&](int v0) {
      auto& counts = by_first[static_cast<std::size_t>(v0)];
      std::vector<int> seq(Q);
      std::vector<char> used(static_cast<std::size_t>(n), 0);
      seq[0] = v0;
      used[static_cast<std::size_t>(v0)] = 1;
      auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == Q) {
          ++counts[code_of(seq)];
          return;
        }
        for (int v = 0; v < n; ++v) {
          if (used[static_cast<std::size_t>(v)]) continue;
          used[static_cast<std::size_t>(v)] = 1;
          seq[depth] = v;
          self(self, depth + 1);
          used[static_cast<std::size_t>(v)] = 0;
        }
      };
      rec(rec, 1);
    };
    if (options.exec == Exec::serial) {
      for (int v = 0; v < n; ++v) scan_first(v);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
      for (int v = 0; v < n; ++v) scan_first(v);
    }
    std::map<std::uint64_t, std::uint64_t> merged;
    for (const auto& m : by_first)
      for (const auto& [code, c] : m) merged[code] += c;
    for (const auto& [code, c] : merged) out.dist.probs[code] = static_cast<double>(c) / static_cast<double>(total);
    return out;
  }

  Rng rng(options.seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t m = 0; m < options.samples; ++m) {
    for (std::size_t a = 0; a < Q; ++a) {
      std::uniform_int_distribution<std::size_t> pick(a, perm.size() - 1);
      std::swap(perm[a], perm[pick(rng)]);
    }
    ++counts[code_of(std::span<const int>(perm.data(), Q))];
  }
  for (const auto& [code, c] : counts)
    out.dist.probs[code] = static_cast<double>(c) / static_cast<double>(options.samples);
  out.exact = false;
  out.samples = options.samples;
  return out;
}

GraphDistribution perceived_q_statistic(const Signature& s, int q) {
  const int t = s.t();
  if (q > t) throw DomainError("q exceeds the signature size");
  require_code_size(q);
  const auto Q = static_cast<std::size_t>(q);
  const std::size_t pairs = pair_count(Q);
  if (pairs > 24) throw SizeError("perceived statistic tabulates at most 2^24 codes");
  const long double sequences = falling(t, q);
  if (sequences * power(2.0L, static_cast<int>(pairs)) > 1e9L) throw SizeError("perceived statistic too large");

  std::vector<double> mass(std::size_t{1} << pairs, 0.0);
  std::vector<double> eta(pairs);
  std::vector<int> seq(Q);
  std::vector<char> used(static_cast<std::size_t>(t), 0);
  // Adds the product-Bernoulli law of the current index sequence, pair by pair.
  auto spread = [&](auto&& self, std::size_t k, std::uint64_t code, double p) -> void {
    if (p == 0.0) return;
    if (k == pairs) {
      mass[code] += p;
      return;
    }
    self(self, k + 1, code, p * (1.0 - eta[k]));
    self(self, k + 1, code | (std::uint64_t{1} << k), p * eta[k]);
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == Q) {
      for (std::size_t a = 0; a < Q; ++a)
        for (std::size_t b = a + 1; b < Q; ++b) eta[pair_index(a, b, Q)] = s.eta(seq[a], seq[b]);
      spread(spread, 0, 0, 1.0);
      return;
    }
    for (int v = 0; v < t; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      seq[depth] = v;
      self(self, depth + 1);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
  GraphDistribution out{q, {}};
  const double norm = static_cast<double>(sequences);
  for (std::uint64_t code = 0; code < mass.size(); ++code)
    if (mass[code] > 0.0) out.probs[code] = mass[code] / norm;
  return out;
}

}  // namespace pdist
