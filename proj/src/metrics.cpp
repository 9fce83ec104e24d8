#include "pdist/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "pdist/errors.hpp"
#include "pdist/random.hpp"

namespace pdist {

namespace {

void require_same_n(const WeightedGraph& r, const WeightedGraph& rp) {
  if (r.n() != rp.n()) throw DomainError("weighted graphs have different vertex counts");
}

std::vector<double> difference(const WeightedGraph& r, const WeightedGraph& rp) {
  std::vector<double> diff(r.data().size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = r.data()[k] - rp.data()[k];
  return diff;
}

double signed_column_score(std::span<const double> col) {
  double pos = 0.0, neg = 0.0;
  for (double c : col) (c > 0.0 ? pos : neg) += std::abs(c);
  return std::max(pos, neg);
}

// One orientation of alternating ascent: alpha on rows, beta on columns.
double ascend(std::span<const double> diff, int n, std::vector<char> alpha, double sign) {
  const auto N = static_cast<std::size_t>(n);
  std::vector<char> beta(N, 0);
  double best = 0.0;
  for (int round = 0; round < 4 * n + 8; ++round) {
    for (std::size_t j = 0; j < N; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < j; ++i)
        if (alpha[i]) c += diff[i * N + j];
      beta[j] = sign * c > 0.0;
    }
    double value = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double row = 0.0;
      for (std::size_t j = i + 1; j < N; ++j)
        if (beta[j]) row += diff[i * N + j];
      alpha[i] = sign * row > 0.0;
      if (alpha[i]) value += sign * row;
    }
    if (value <= best + 1e-15) break;
    best = value;
  }
  return best;
}

}  // namespace

double d1(const WeightedGraph& r, const WeightedGraph& rp) {
  require_same_n(r, rp);
  double s = 0.0;
  for (int i = 0; i < r.n(); ++i)
    for (int j = i + 1; j < r.n(); ++j) s += std::abs(r.at(i, j) - rp.at(i, j));
  const double n = r.n();
  return s / (n * n);
}

double upper_cut_serial(std::span<const double> diff, int n) {
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> col(N);
  double best = 0.0;
  for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << n); ++alpha) {
    for (std::size_t j = 0; j < N; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < j; ++i)
        if ((alpha >> i) & 1U) c += diff[i * N + j];
      col[j] = c;
    }
    best = std::max(best, signed_column_score(col));
  }
  return best;
}

double upper_cut_parallel(std::span<const double> diff, int n) {
  const auto N = static_cast<std::size_t>(n);
  const int high_bits = std::min(n, 10);
  const int low_bits = n - high_bits;
  const long long chunks = 1LL << high_bits;
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
  for (long long chunk = 0; chunk < chunks; ++chunk) {
    std::uint64_t alpha = static_cast<std::uint64_t>(chunk) << low_bits;
    std::vector<double> col(N, 0.0);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if ((alpha >> i) & 1U) col[j] += diff[i * N + j];
    double local = signed_column_score(col);
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << low_bits); ++k) {
      const auto b = static_cast<std::size_t>(std::countr_zero(k));
      const double sign = ((alpha >> b) & 1U) ? -1.0 : 1.0;
      alpha ^= std::uint64_t{1} << b;
      for (std::size_t j = b + 1; j < N; ++j) col[j] += sign * diff[b * N + j];
      local = std::max(local, signed_column_score(col));
    }
    best = std::max(best, local);
  }
  return best;
}

CutValue d_box(const WeightedGraph& r, const WeightedGraph& rp, const CutOptions& options) {
  require_same_n(r, rp);
  const int n = r.n();
  const auto diff = difference(r, rp);
  const double norm = static_cast<double>(n) * n;
  if (options.mode == CutMode::exact) {
    if (n > options.exact_cap || n > 62)
      throw SizeError("d_box exact mode supports n <= " + std::to_string(options.exact_cap) + "; request heuristic mode");
    const double raw = options.exec == Exec::serial ? upper_cut_serial(diff, n) : upper_cut_parallel(diff, n);
    return {raw / norm, true};
  }
  Rng rng(options.seed);
  std::bernoulli_distribution coin(0.5);
  double best = 0.0;
  for (int s = 0; s < options.starts; ++s) {
    std::vector<char> alpha(static_cast<std::size_t>(n));
    for (auto& a : alpha) a = coin(rng);
    best = std::max({best, ascend(diff, n, alpha, 1.0), ascend(diff, n, alpha, -1.0)});
  }
  return {best / norm, false};
}

double GraphDistribution::total() const {
  double s = 0.0;
  for (const auto& [code, p] : probs) s += p;
  return s;
}

void GraphDistribution::check() const {
  for (const auto& [code, p] : probs)
    if (p < 0.0) throw DomainError("negative probability");
  if (std::abs(total() - 1.0) > 1e-9) throw DomainError("distribution mass differs from 1");
}

double variation_distance(const GraphDistribution& mu, const GraphDistribution& nu) {
  if (mu.q != nu.q) throw DomainError("distributions over different vertex counts");
  double s = 0.0;
  for (const auto& [code, p] : mu.probs) s += std::abs(p - nu.at(code));
  for (const auto& [code, p] : nu.probs)
    if (!mu.probs.contains(code)) s += std::abs(p);
  return 0.5 * s;
}

GraphDistribution product_distribution(int q, std::span<const double> pair_probs) {
  const std::size_t pairs = pair_count(static_cast<std::size_t>(q));
  if (pair_probs.size() != pairs) throw DomainError("need one probability per vertex pair");
  if (pairs > 24) throw SizeError("product distribution too large to tabulate");
  GraphDistribution out{q, {}};
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
    double p = 1.0;
    for (std::size_t k = 0; k < pairs; ++k) p *= ((code >> k) & 1U) ? pair_probs[k] : 1.0 - pair_probs[k];
    if (p > 0.0) out.probs[code] = p;
  }
  return out;
}

}  // namespace pdist
