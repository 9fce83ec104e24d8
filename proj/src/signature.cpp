#include "pdist/signature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pdist/errors.hpp"
#include "pdist/partition_scan.hpp"

namespace pdist {

// --- Signature --------------------------------------------------------------

Signature::Signature(int t) : t_(t), eta_(pair_count(static_cast<std::size_t>(std::max(t, 0))), 0.0) {
  if (t < 1) throw DomainError("signature needs t >= 1");
}

Signature::Signature(int t, std::vector<double> eta) : t_(t), eta_(std::move(eta)) {
  if (t < 1) throw DomainError("signature needs t >= 1");
  if (eta_.size() != pair_count(static_cast<std::size_t>(t))) throw DomainError("signature needs exactly C(t,2) entries");
  for (double v : eta_)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("signature entry outside [0,1]");
}

double Signature::eta(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= t_ || j >= t_) throw DomainError("bad signature pair");
  if (i > j) std::swap(i, j);
  return eta_[pair_index(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(t_))];
}

void Signature::set(int i, int j, double value) {
  if (i == j || i < 0 || j < 0 || i >= t_ || j >= t_) throw DomainError("bad signature pair");
  if (!(value >= 0.0 && value <= 1.0)) throw DomainError("signature entry outside [0,1]");
  if (i > j) std::swap(i, j);
  eta_[pair_index(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(t_))] = value;
}

WeightedGraph Signature::as_weighted_graph() const {
  WeightedGraph r(t_);
  for (int i = 0; i < t_; ++i)
    for (int j = i + 1; j < t_; ++j) r.set(i, j, eta(i, j));
  return r;
}

void PartitionProperty::validate() const {
  const std::size_t pairs = pair_count(static_cast<std::size_t>(s));
  if (s < 1) throw DomainError("partition property needs s >= 1");
  if (alpha.size() != pairs || beta.size() != pairs) throw DomainError("partition property needs C(s,2) bounds");
  for (std::size_t k = 0; k < pairs; ++k)
    if (!(0.0 <= alpha[k] && alpha[k] <= beta[k] && beta[k] <= 1.0)) throw DomainError("partition property bounds violate 0 <= alpha <= beta <= 1");
}

// --- indices ----------------------------------------------------------------

double index_from_densities(std::span<const double> densities, int t) {
  const auto T = static_cast<std::size_t>(t);
  double s = 0.0;
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = i + 1; j < T; ++j) s += densities[i * T + j] * densities[i * T + j];
  return s / (static_cast<double>(t) * t);
}

double index_of_partition(const Graph& g, const Equipartition& a) {
  return index_from_densities(block_densities(g, a), a.t());
}

double index_of_property(const PartitionProperty& pi) {
  pi.validate();
  double s = 0.0;
  for (double a : pi.alpha) s += a * a;
  return s / (static_cast<double>(pi.s) * pi.s);
}

double index_of_signature(const Signature& sig) {
  double s = 0.0;
  for (double v : sig.values()) s += v * v;
  return s / (static_cast<double>(sig.t()) * sig.t());
}

Signature zero_signature(const Graph& g, const Equipartition& a) {
  const auto d = block_densities(g, a);
  const auto t = static_cast<std::size_t>(a.t());
  Signature s(a.t());
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j) s.set(static_cast<int>(i), static_cast<int>(j), d[i * t + j]);
  return s;
}

bool signature_check(const Signature& s, const Equipartition& a, const Graph& g, double gamma, double eps) {
  if (s.t() != a.t()) throw DomainError("signature and partition sizes differ");
  const auto d = block_densities(g, a);
  const auto t = static_cast<std::size_t>(a.t());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if (std::abs(d[i * t + j] - s.eta(static_cast<int>(i), static_cast<int>(j))) > gamma + 1e-12) ++bad;
  return static_cast<double>(bad) <= eps * static_cast<double>(pair_count(t)) + 1e-12;
}

double signature_d1(const Signature& a, const Signature& b) {
  if (a.t() != b.t()) throw DomainError("d1 between signatures of different sizes is undefined");
  double s = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) s += std::abs(a.values()[k] - b.values()[k]);
  return s / (static_cast<double>(a.t()) * a.t());
}

Signature extend_signature(const Signature& s, const Equipartition& a, const Equipartition& b) {
  if (s.t() != a.t()) throw DomainError("signature and partition sizes differ");
  if (!is_refinement(b, a)) throw DomainError("extension target is not a refinement");
  std::vector<int> origin(static_cast<std::size_t>(b.t()));
  for (int i = 0; i < b.t(); ++i) origin[static_cast<std::size_t>(i)] = a.part_of(b.part(i).front());
  Signature out(b.t());
  for (int i = 0; i < b.t(); ++i)
    for (int j = i + 1; j < b.t(); ++j) {
      const int k = origin[static_cast<std::size_t>(i)], l = origin[static_cast<std::size_t>(j)];
      out.set(i, j, k == l ? 0.0 : s.eta(k, l));
    }
  return out;
}

// --- grids --------------------------------------------------------------------

int grid_levels(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("grid quantum must lie in (0,1]");
  const double inv = 1.0 / mu;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * std::max(1.0, inv)) throw DomainError("1/mu must be an integer");
  return static_cast<int>(rounded);
}

std::uint64_t property_grid_size(int s, double mu, GridMode mode) {
  const auto levels = static_cast<long double>(grid_levels(mu) + 1);
  const long double per_pair = mode == GridMode::slab ? levels : levels * (levels + 1) / 2;
  const long double total = std::pow(per_pair, static_cast<long double>(pair_count(static_cast<std::size_t>(s))));
  return total > 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(total + 0.5L);
}

void for_each_property(int s, double mu, GridMode mode, const std::function<bool(const PartitionProperty&)>& visit,
                       std::uint64_t cap) {
  if (s < 1) throw DomainError("property size must be >= 1");
  const int levels = grid_levels(mu);
  const std::uint64_t size = property_grid_size(s, mu, mode);
  if (size > cap) throw SizeError("partition-property grid has " + std::to_string(size) + " members, above the cap");
  const std::size_t pairs = pair_count(static_cast<std::size_t>(s));
  // Per pair choice index: slab -> alpha level; full -> (alpha level, beta level) with alpha <= beta.
  std::vector<std::pair<int, int>> choices;
  for (int a = 0; a <= levels; ++a) {
    if (mode == GridMode::slab) {
      choices.emplace_back(a, std::min(levels, a + 1));
    } else {
      for (int b = a; b <= levels; ++b) choices.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> digit(pairs, 0);
  PartitionProperty pi{s, std::vector<double>(pairs), std::vector<double>(pairs)};
  while (true) {
    for (std::size_t k = 0; k < pairs; ++k) {
      pi.alpha[k] = static_cast<double>(choices[digit[k]].first) / levels;
      pi.beta[k] = static_cast<double>(choices[digit[k]].second) / levels;
    }
    if (!visit(pi)) return;
    std::size_t k = pairs;
    while (k > 0) {
      --k;
      if (++digit[k] < choices.size()) break;
      digit[k] = 0;
      if (k == 0) return;
    }
    if (pairs == 0) return;
  }
}

std::vector<PartitionProperty> enumerate_property_grid(int s, double mu, GridMode mode, std::uint64_t cap) {
  std::vector<PartitionProperty> out;
  for_each_property(s, mu, mode, [&](const PartitionProperty& pi) {
    out.push_back(pi);
    return true;
  }, cap);
  return out;
}

// --- property distance ------------------------------------------------------

namespace {

double pair_deviation(double alpha, double beta, double d) { return std::max({0.0, alpha - d, d - beta}); }

// Best labeling of one unlabeled equipartition, unnormalized.
double best_labeling_cost(const BlockStats& st, const PartitionProperty& pi, std::vector<int>& perm) {
  const auto s = static_cast<std::size_t>(pi.s);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double cost = 0.0;
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t q = p + 1; q < s; ++q) {
        std::size_t a = static_cast<std::size_t>(perm[p]), b = static_cast<std::size_t>(perm[q]);
        if (a > b) std::swap(a, b);
        const std::size_t k = pair_index(a, b, s);
        cost += st.weight(p, q) * pair_deviation(pi.alpha[k], pi.beta[k], st.density(p, q));
      }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

double property_cost(const Graph& g, const Equipartition& a, const PartitionProperty& pi) {
  pi.validate();
  if (a.t() != pi.s) throw DomainError("partition size does not match the property");
  const auto d = block_densities(g, a);
  const auto s = static_cast<std::size_t>(pi.s);
  double cost = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      const double w = static_cast<double>(a.part_size(static_cast<int>(i))) * static_cast<double>(a.part_size(static_cast<int>(j)));
      const std::size_t k = pair_index(i, j, s);
      cost += w * pair_deviation(pi.alpha[k], pi.beta[k], d[i * s + j]);
    }
  const double n = g.n();
  return cost / (n * n);
}

double property_distance(const Graph& g, const PartitionProperty& pi, Exec exec, std::uint64_t cap) {
  pi.validate();
  if (pi.s > g.n()) throw DomainError("property has more parts than the graph has vertices");
  std::uint64_t labeled = equipartition_count(g.n(), pi.s);
  for (int k = 2; k <= pi.s; ++k) labeled *= static_cast<std::uint64_t>(k);
  if (labeled > cap) throw SizeError("property distance would scan " + std::to_string(labeled) + " labeled equipartitions");
  const double norm = static_cast<double>(g.n()) * g.n();
  const PartitionScan scan(g, pi.s);
  double best = 1e300;
  if (exec == Exec::serial) {
    std::vector<int> perm(static_cast<std::size_t>(pi.s));
    for_each_equipartition(g.n(), pi.s, [&](std::span<const int> labels) {
      BlockStats st = scan.stats(labels);
      best = std::min(best, best_labeling_cost(st, pi, perm));
      return best > 0.0;
    });
    return best / norm;
  }
  const auto all = scan.materialize();
  const long long count = static_cast<long long>(scan.count());
#pragma omp parallel reduction(min : best)
  {
    std::vector<int> perm(static_cast<std::size_t>(pi.s));
#pragma omp for schedule(dynamic, 256)
    for (long long k = 0; k < count; ++k) {
      BlockStats st = scan.stats(scan.labels(all, static_cast<std::size_t>(k)));
      best = std::min(best, best_labeling_cost(st, pi, perm));
    }
  }
  return best / norm;
}

// --- file format --------------------------------------------------------------

Signature read_signature(std::istream& in) {
  int t = 0;
  if (!(in >> t) || t < 1) throw ParseError("expected signature size t >= 1");
  Signature s(t);
  std::vector<char> seen(pair_count(static_cast<std::size_t>(t)), 0);
  for (std::size_t k = 0; k < seen.size(); ++k) {
    long long i = 0, j = 0;
    double eta = 0.0;
    if (!(in >> i >> j >> eta)) throw ParseError("expected line 'i j eta'");
    if (!(1 <= i && i < j && j <= t)) throw ParseError("signature pair violates 1 <= i < j <= t");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ParseError("signature entry outside [0,1]");
    const std::size_t idx = pair_index(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), static_cast<std::size_t>(t));
    if (seen[idx]) throw ParseError("duplicate signature pair");
    seen[idx] = 1;
    s.set(static_cast<int>(i - 1), static_cast<int>(j - 1), eta);
  }
  std::string rest;
  if (in >> rest) throw ParseError("trailing content after signature entries");
  return s;
}

Signature read_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_signature(in);
}

void write_signature(std::ostream& out, const Signature& s) {
  out << s.t() << '\n';
  const auto old_precision = out.precision(17);
  for (int i = 0; i < s.t(); ++i)
    for (int j = i + 1; j < s.t(); ++j) out << i + 1 << ' ' << j + 1 << ' ' << s.eta(i, j) << '\n';
  out.precision(old_precision);
}

}  // namespace pdist
