#include "pdist/final_partition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "pdist/errors.hpp"
#include "pdist/partition_scan.hpp"
#include "pdist/random.hpp"

namespace pdist {

void FinalSearchParams::validate() const {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (growth < 1) throw DomainError("growth must be >= 1");
  if (t_cap < k) throw DomainError("t_cap must be >= k");
  grid_levels(mu);
}

double sandwich_mu(double gamma, int growth, int t) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const double bound = gamma / (48.0 * growth * growth * t * t);
  return 1.0 / std::ceil(1.0 / bound - 1e-9);
}

// --- index maximization -------------------------------------------------------

IndexMax max_index(const Graph& g, int s, Exec exec) {
  if (s < 1 || s > g.n()) throw DomainError("part count must lie in [1, n]");
  const PartitionScan scan(g, s);
  if (scan.count() > 50'000'000) throw SizeError("too many equipartitions to scan");
  std::vector<int> best_labels;
  ArgMax best;
  if (exec == Exec::serial) {
    std::uint64_t k = 0;
    for_each_equipartition(g.n(), s, [&](std::span<const int> labels) {
      const double v = scan.stats(labels).index();
      if (v > best.value) best_labels.assign(labels.begin(), labels.end());
      best.offer(v, k++);
      return true;
    });
  } else {
    const auto all = scan.materialize();
    const long long count = static_cast<long long>(scan.count());
    std::vector<double> values(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 256)
    for (long long k = 0; k < count; ++k)
      values[static_cast<std::size_t>(k)] = scan.stats(scan.labels(all, static_cast<std::size_t>(k))).index();
    for (long long k = 0; k < count; ++k) best.offer(values[static_cast<std::size_t>(k)], static_cast<std::uint64_t>(k));
    const auto span = scan.labels(all, best.index);
    best_labels.assign(span.begin(), span.end());
  }
  return {best.value, Equipartition(std::move(best_labels), s)};
}

bool is_final(const Graph& g, const Equipartition& a, const FinalSearchParams& params) {
  const double base = index_of_partition(g, a);
  for (int s = a.t(); s <= std::min(params.f(a.t()), g.n()); ++s)
    if (max_index(g, s, params.exec).value >= base + params.gamma - 1e-12) return false;
  return true;
}

FinalResult find_final(const Graph& g, const FinalSearchParams& params) {
  if (params.k > g.n()) throw DomainError("k exceeds the number of vertices");
  Equipartition current = canonical_equipartition(g.n(), params.k);
  const int max_rounds = static_cast<int>(std::ceil(2.0 / params.gamma));
  int rounds = 0;
  while (rounds < max_rounds) {
    const double base = index_of_partition(g, current);
    std::optional<IndexMax> best;
    for (int s = current.t(); s <= std::min(params.f(current.t()), g.n()); ++s) {
      IndexMax m = max_index(g, s, params.exec);
      if (!best || m.value > best->value) best = std::move(m);
    }
    if (!best || best->value < base + params.gamma / 2.0 - 1e-12) break;
    current = best->arg;
    ++rounds;
  }
  return {current, rounds};
}

// --- oracles --------------------------------------------------------------------

void ExactPartitionOracle::record_read(const Graph& g) {
  queried_ = true;
  edges_ = pair_count(static_cast<std::size_t>(g.n()));
  vertices_ = static_cast<std::uint64_t>(g.n());
}

bool ExactPartitionOracle::accepts(const Graph& g, const PartitionProperty& pi, std::uint64_t) {
  record_read(g);
  if (pi.s > g.n()) return false;
  return property_distance(g, pi, exec_) < mu_ - 1e-12;
}

int SampledPartitionOracle::default_reps(std::uint64_t family_size) {
  const double l = std::ceil(std::log(static_cast<double>(std::max<std::uint64_t>(family_size, 2))));
  return 10 * std::max(1, static_cast<int>(l));
}

bool SampledPartitionOracle::accepts(const Graph& g, const PartitionProperty& pi, std::uint64_t id) {
  const int n = g.n();
  if (pi.s > n) return false;
  const int q = std::min(n, std::max(sample_size_, pi.s));
  const std::uint64_t stream = derive_seed(seed_, id);
  std::vector<int> perm(static_cast<std::size_t>(n));
  int votes = 0;
  for (int rep = 0; rep < reps_; ++rep) {
    Rng rng(derive_seed(stream, static_cast<std::uint64_t>(rep)));
    std::iota(perm.begin(), perm.end(), 0);
    for (int a = 0; a < q; ++a) {
      std::uniform_int_distribution<int> pick(a, n - 1);
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> sample(perm.begin(), perm.begin() + q);
    std::sort(sample.begin(), sample.end());
    vertices_.insert(sample.begin(), sample.end());
    edges_ += pair_count(static_cast<std::size_t>(q));
    if (property_distance(g.induced(sample), pi) <= mu_ / 2.0 + 1e-12) ++votes;
  }
  return 2 * votes > reps_;
}

// --- exact slab maximization ------------------------------------------------

namespace {

// One pair of an unlabeled equipartition: |V_p||V_q| and e(V_p,V_q) scaled by L.
struct SlabPair {
  std::int64_t w;
  std::int64_t x;  // e * L
  std::int64_t levels;
  std::int64_t base() const { return x / w; }
  // Lowest level whose cost can fit in `budget`.
  std::int64_t lowest(std::int64_t budget) const {
    const std::int64_t num = x - budget;
    const std::int64_t c = num > 0 ? (num + w - 1) / w : 0;
    return std::max<std::int64_t>(0, c - 1);
  }
  // Cost of alpha = k/L, beta = min(1, (k+1)/L), in units of 1/(L n^2).
  std::int64_t cost(std::int64_t k) const {
    const std::int64_t above = k * w - x;
    const std::int64_t below = k < levels ? x - (k + 1) * w : 0;
    return std::max<std::int64_t>({0, above, below});
  }
};

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min() / 4;

// best[p][b]: max sum of k^2 over pairs p.. with total cost <= b.
std::vector<std::vector<std::int64_t>> suffix_table(const std::vector<SlabPair>& pairs, std::int64_t levels,
                                                    std::int64_t budget) {
  const std::size_t P = pairs.size();
  const auto B = static_cast<std::size_t>(budget);
  std::vector<std::vector<std::int64_t>> best(P + 1, std::vector<std::int64_t>(B + 1, 0));
  for (std::size_t p = P; p-- > 0;) {
    const SlabPair& pr = pairs[p];
    for (std::size_t b = 0; b <= B; ++b) {
      std::int64_t v = kNone;
      for (std::int64_t k = pr.lowest(budget); k <= levels; ++k) {
        const std::int64_t c = pr.cost(k);
        if (c > static_cast<std::int64_t>(b)) {
          if (k > pr.base()) break;
          continue;
        }
        v = std::max(v, k * k + best[p + 1][b - static_cast<std::size_t>(c)]);
      }
      best[p][b] = v;
    }
  }
  return best;
}

// Optimistic bound: every pair gets the whole budget.
std::int64_t slab_upper_bound(const std::vector<SlabPair>& pairs, std::int64_t levels, std::int64_t budget) {
  std::int64_t ub = 0;
  for (const auto& pr : pairs) {
    const std::int64_t k = std::min(levels, (pr.x + budget) / pr.w);
    ub += k * k;
  }
  return ub;
}

std::vector<SlabPair> slab_pairs(const BlockStats& st, std::int64_t levels, std::span<const int> order) {
  // order[i] = part placed at label i
  std::vector<SlabPair> pairs;
  const auto s = static_cast<std::size_t>(st.s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      const auto p = static_cast<std::size_t>(order[i]), q = static_cast<std::size_t>(order[j]);
      pairs.push_back({static_cast<std::int64_t>(st.sizes[p]) * st.sizes[q],
                       static_cast<std::int64_t>(st.edges[p * s + q]) * levels, levels});
    }
  return pairs;
}

// Block stats up to relabeling: least (sizes, edges) vector over all orders.
std::vector<std::int64_t> canonical_key(const BlockStats& st) {
  const auto s = static_cast<std::size_t>(st.s);
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  do {
    std::vector<std::int64_t> key;
    for (std::size_t i = 0; i < s; ++i) key.push_back(st.sizes[static_cast<std::size_t>(perm[i])]);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        key.push_back(st.edges[static_cast<std::size_t>(perm[i]) * s + static_cast<std::size_t>(perm[j])]);
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

SlabMax exact_slab_max(const Graph& g, int s, double mu, Exec exec) {
  if (s < 1 || s > g.n()) throw DomainError("part count must lie in [1, n]");
  const std::int64_t levels = grid_levels(mu);
  const std::int64_t n = g.n();
  // cost < mu  <=>  sum_p (k_p w_p - e_p L) < n^2
  const std::int64_t budget = n * n - 1;
  const PartitionScan scan(g, s);
  if (scan.count() > 50'000'000) throw SizeError("too many equipartitions to scan");
  std::vector<int> identity(static_cast<std::size_t>(s));
  std::iota(identity.begin(), identity.end(), 0);

  const auto all = scan.materialize();
  const long long count = static_cast<long long>(scan.count());
  std::vector<std::int64_t> values(static_cast<std::size_t>(count), kNone);
  std::atomic<std::int64_t> best{kNone};
  auto evaluate = [&](long long k) {
    const BlockStats st = scan.stats(scan.labels(all, static_cast<std::size_t>(k)));
    const auto pairs = slab_pairs(st, levels, identity);
    if (slab_upper_bound(pairs, levels, budget) < best.load(std::memory_order_relaxed)) return;
    const std::int64_t v = suffix_table(pairs, levels, budget)[0][static_cast<std::size_t>(budget)];
    values[static_cast<std::size_t>(k)] = v;
    std::int64_t cur = best.load(std::memory_order_relaxed);
    while (v > cur && !best.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  };
  if (exec == Exec::serial) {
    for (long long k = 0; k < count; ++k) evaluate(k);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (long long k = 0; k < count; ++k) evaluate(k);
  }
  const std::int64_t target = best.load();

  // Lexicographically least level vector over every maximizing labeled partition.
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::int64_t> least;
  for (long long k = 0; k < count; ++k) {
    if (values[static_cast<std::size_t>(k)] != target) continue;
    const BlockStats st = scan.stats(scan.labels(all, static_cast<std::size_t>(k)));
    if (!seen.insert(canonical_key(st)).second) continue;
    std::vector<int> order = identity;
    do {
      const auto pairs = slab_pairs(st, levels, order);
      const auto table = suffix_table(pairs, levels, budget);
      std::vector<std::int64_t> chosen;
      std::int64_t b = budget, need = target;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::int64_t lv = pairs[p].lowest(budget); lv <= levels; ++lv) {
          const std::int64_t c = pairs[p].cost(lv);
          if (c > b) {
            if (lv > pairs[p].base()) break;
            continue;
          }
          if (lv * lv + table[p + 1][static_cast<std::size_t>(b - c)] >= need) {
            chosen.push_back(lv);
            b -= c;
            need -= lv * lv;
            break;
          }
        }
      }
      if (least.empty() || chosen < least) least = std::move(chosen);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  const std::size_t P = pair_count(static_cast<std::size_t>(s));
  PartitionProperty pi{s, std::vector<double>(P), std::vector<double>(P)};
  for (std::size_t p = 0; p < P; ++p) {
    pi.alpha[p] = static_cast<double>(least[p]) / static_cast<double>(levels);
    pi.beta[p] = static_cast<double>(std::min(levels, least[p] + 1)) / static_cast<double>(levels);
  }
  const double value = static_cast<double>(target) / (static_cast<double>(levels) * levels * s * s);
  return {value, pi};
}

// --- slab signature search -------------------------------------------------------------

namespace {

std::int64_t level_square_sum(const PartitionProperty& pi, int levels) {
  std::int64_t sum = 0;
  for (double a : pi.alpha) {
    const auto k = static_cast<std::int64_t>(std::llround(a * levels));
    sum += k * k;
  }
  return sum;
}

}  // namespace

SignatureSearchResult signature_search(const Graph& g, const FinalSearchParams& params, PartitionOracle& oracle) {
  params.validate();
  const int n = g.n();
  if (params.k > n) throw DomainError("k exceeds the number of vertices");
  const int levels = grid_levels(params.mu);
  auto* exact = dynamic_cast<ExactPartitionOracle*>(&oracle);
  const bool fast = exact != nullptr && params.strategy == SlabStrategy::automatic;
  if (fast && std::abs(exact->mu() - params.mu) > 1e-15) throw DomainError("oracle and search use different mu");

  if (fast) exact->record_read(g);
  SignatureSearchResult out;
  std::vector<PartitionProperty> best_props;
  std::uint64_t id = 0;
  const int top = std::min(params.f(params.t_cap), n);
  for (int s = params.k; s <= top; ++s) {
    if (fast) {
      SlabMax m = exact_slab_max(g, s, params.mu, params.exec);
      out.m_values.push_back(m.value);
      best_props.push_back(std::move(m.property));
      ++out.oracle_calls;
    } else {
      std::int64_t best = -1;
      PartitionProperty arg;
      for_each_property(s, params.mu, GridMode::slab, [&](const PartitionProperty& pi) {
        ++out.oracle_calls;
        if (oracle.accepts(g, pi, id++)) {
          const std::int64_t v = level_square_sum(pi, levels);
          if (v > best) {
            best = v;
            arg = pi;
          }
        }
        return true;
      }, params.grid_cap);
      if (best < 0) throw SearchFailure("oracle rejected every slab property of size " + std::to_string(s));
      out.m_values.push_back(static_cast<double>(best) / (static_cast<double>(levels) * levels * s * s));
      best_props.push_back(std::move(arg));
    }
    out.sizes.push_back(s);
  }

  auto m_of = [&](int s) { return out.m_values[static_cast<std::size_t>(s - params.k)]; };
  for (int s = params.k; s <= std::min(params.t_cap, n); ++s) {
    bool ok = true;
    for (int sp = s + 1; sp <= std::min(params.f(s), top) && ok; ++sp)
      ok = m_of(sp) <= m_of(s) + 0.75 * params.gamma + 1e-12;
    if (ok) {
      out.s_star = s;
      out.property = best_props[static_cast<std::size_t>(s - params.k)];
      out.signature = out.property.lower_signature();
      return out;
    }
  }
  throw SearchFailure("no admissible size s* in [k, T]");
}

}  // namespace pdist
