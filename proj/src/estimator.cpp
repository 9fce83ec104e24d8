#include "pdist/estimator.hpp"

#include <cmath>
#include <functional>
#include <memory>

#include "pdist/errors.hpp"
#include "pdist/homstats.hpp"
#include "pdist/oracle.hpp"

namespace pdist {

void EstimatorParams::validate() const {
  if (!(0.0 < eps && eps <= alpha && alpha <= 1.0)) throw DomainError("need 0 < eps <= alpha <= 1");
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  if (T < 1) throw DomainError("T must be >= 1");
  if (removal_M < 0 || removal_n0 < 0 || removal_delta < 0.0) throw DomainError("removal constants must be nonnegative");
  grid_levels(beta);
}

const char* case_name(Case c) { return c == Case::close ? "CloseCase" : "FarCase"; }

// --- extensions -------------------------------------------------------------------

Extension extension_by_split(const Signature& s, std::span<const int> split) {
  if (static_cast<int>(split.size()) != s.t()) throw DomainError("split vector needs one entry per part");
  std::vector<int> origin;
  for (int i = 0; i < s.t(); ++i) {
    if (split[static_cast<std::size_t>(i)] < 1) throw DomainError("every part splits into at least one part");
    origin.insert(origin.end(), static_cast<std::size_t>(split[static_cast<std::size_t>(i)]), i);
  }
  const int size = static_cast<int>(origin.size());
  Signature out(size);
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      const int k = origin[static_cast<std::size_t>(a)], l = origin[static_cast<std::size_t>(b)];
      out.set(a, b, k == l ? 0.0 : s.eta(k, l));
    }
  return {std::move(out), std::vector<int>(split.begin(), split.end()), std::move(origin)};
}

std::vector<Extension> extensions_of(const Signature& s, int T, std::uint64_t cap) {
  const int t = s.t();
  if (t > T) throw DomainError("signature has more parts than the extension cap");
  std::vector<Extension> out;
  std::vector<int> split(static_cast<std::size_t>(t));
  // Compositions of `left` into parts i.. (each >= 1), lexicographic.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == t - 1) {
      split[static_cast<std::size_t>(i)] = left;
      if (out.size() >= cap) throw SizeError("more than " + std::to_string(cap) + " extensions");
      out.push_back(extension_by_split(s, split));
      return;
    }
    for (int m = 1; m <= left - (t - 1 - i); ++m) {
      split[static_cast<std::size_t>(i)] = m;
      rec(i + 1, left - m);
    }
  };
  for (int total = t; total <= T; ++total) rec(0, total);
  return out;
}

// --- certificates -------------------------------------------------------------

namespace {

// Grid signatures of size t passing `keep`, in lexicographic level order.
std::vector<Signature> filtered_grid(int t, double beta, Exec exec, std::uint64_t cap,
                                     const std::function<bool(const Signature&)>& keep) {
  const int levels = grid_levels(beta);
  const std::size_t pairs = pair_count(static_cast<std::size_t>(t));
  long double total_ld = std::pow(static_cast<long double>(levels + 1), static_cast<long double>(pairs));
  if (total_ld > static_cast<long double>(cap)) throw SizeError("certificate grid of size " + std::to_string(t) + " exceeds the cap");
  const auto total = static_cast<long long>(total_ld + 0.5L);
  auto decode = [&](long long index) {
    std::vector<double> eta(pairs);
    for (std::size_t k = pairs; k-- > 0;) {
      eta[k] = static_cast<double>(index % (levels + 1)) / levels;
      index /= levels + 1;
    }
    return Signature(t, std::move(eta));
  };
  std::vector<char> pass(static_cast<std::size_t>(total), 0);
  if (exec == Exec::serial) {
    for (long long i = 0; i < total; ++i) pass[static_cast<std::size_t>(i)] = keep(decode(i));
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < total; ++i) pass[static_cast<std::size_t>(i)] = keep(decode(i));
  }
  std::vector<Signature> out;
  for (long long i = 0; i < total; ++i)
    if (pass[static_cast<std::size_t>(i)]) out.push_back(decode(i));
  return out;
}

}  // namespace

std::vector<Signature> hereditary_certificates(std::span<const Graph> family, double delta, int T, double beta,
                                               Exec exec, std::uint64_t cap) {
  HomOptions exact;
  exact.exec = Exec::serial;
  std::vector<Signature> out;
  for (int t = 1; t <= T; ++t) {
    auto part = filtered_grid(t, beta, exec, cap, [&](const Signature& c) {
      const WeightedGraph r = c.as_weighted_graph();
      for (const Graph& h : family)
        if (ind_induced(h, r, exact).value > delta / 2.0 + 1e-12) return false;
      return true;
    });
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Signature> general_certificates(const std::set<std::uint64_t>& family, int q, int T, double beta,
                                            Exec exec, std::uint64_t cap) {
  std::vector<Signature> out;
  if (family.empty()) return out;
  for (int t = q; t <= T; ++t) {
    auto part = filtered_grid(t, beta, exec, cap, [&](const Signature& c) {
      const GraphDistribution mu = perceived_q_statistic(c, q);
      double mass = 0.0;
      for (std::uint64_t code : family) mass += mu.at(code);
      return mass >= 0.5 - 1e-12;
    });
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// --- estimators -----------------------------------------------------------------

Verdict search_witness(const Signature& s, std::span<const Signature> certificates, const EstimatorParams& params) {
  const double threshold = params.alpha - params.eps / 2.0 + 1e-12;
  for (const Extension& ext : extensions_of(s, params.T, params.extension_cap))
    for (const Signature& c : certificates) {
      if (c.t() != ext.signature.t()) continue;
      const double d = signature_d1(ext.signature, c);
      if (d <= threshold) return {Case::close, Witness{ext.signature, c, d}};
    }
  return {Case::far, std::nullopt};
}

Verdict estimate_hereditary(const Signature& s, std::span<const Graph> family, const EstimatorParams& params) {
  params.validate();
  const auto certs = hereditary_certificates(family, params.delta, params.T, params.beta, params.exec, params.grid_cap);
  return search_witness(s, certs, params);
}

Verdict estimate_general(const Signature& s, const std::set<std::uint64_t>& family, int q, const EstimatorParams& params) {
  params.validate();
  const auto certs = general_certificates(family, q, params.T, params.beta, params.exec, params.grid_cap);
  return search_witness(s, certs, params);
}

// --- pipelines ------------------------------------------------------------------

namespace {

std::unique_ptr<PartitionOracle> make_oracle(const FinalSearchParams& search, std::uint64_t seed,
                                             const PipelineOptions& options) {
  if (options.oracle == OracleKind::exact) return std::make_unique<ExactPartitionOracle>(search.mu, search.exec);
  std::uint64_t family = 0;
  for (int s = search.k; s <= search.f(search.t_cap); ++s) family += property_grid_size(s, search.mu, GridMode::slab);
  const int reps = options.reps > 0 ? options.reps : SampledPartitionOracle::default_reps(family);
  return std::make_unique<SampledPartitionOracle>(search.mu, options.sample_size, reps, seed);
}

EstimatorParams halved(const EstimatorParams& params) {
  EstimatorParams inner = params;
  inner.alpha = params.alpha - params.eps / 2.0;
  inner.eps = params.eps / 2.0;
  return inner;
}

// Slab signature search followed by `estimate`.
Verdict run_pipeline(const Graph& g, const EstimatorParams& params, const FinalSearchParams& search,
                     std::uint64_t seed, const PipelineOptions& options,
                     const std::function<Verdict(const Signature&, const EstimatorParams&)>& estimate) {
  auto oracle = make_oracle(search, seed, options);
  const SignatureSearchResult found = signature_search(g, search, *oracle);
  Verdict v = estimate(found.signature, halved(params));
  v.s_star = found.s_star;
  v.edge_queries = oracle->edge_queries();
  v.vertex_queries = oracle->vertex_queries();
  return v;
}

}  // namespace

Verdict pipeline_hereditary(const Graph& g, const PropertySpec& p, const EstimatorParams& params,
                            const FinalSearchParams& search, std::uint64_t seed, const PipelineOptions& options) {
  params.validate();
  search.validate();
  const int n = g.n();
  auto read_everything = [&] {
    const double dist = dist_oracle(g, p, params.exec);
    Verdict v{dist <= params.alpha - params.eps / 2.0 + 1e-12 ? Case::close : Case::far, std::nullopt};
    v.shortcut = true;
    v.oracle_dist = dist;
    v.edge_queries = pair_count(static_cast<std::size_t>(n));
    v.vertex_queries = static_cast<std::uint64_t>(n);
    return v;
  };
  if (n < params.removal_n0 && n <= 7) return read_everything();

  const int m = params.removal_M > 0 ? params.removal_M : smallest_violator_size(p, 5);
  const std::vector<Graph> family = m > 0 ? forbidden_family(p, m) : std::vector<Graph>{};
  EstimatorParams cert = params;
  if (params.removal_delta > 0.0) cert.delta = params.removal_delta;
  try {
    return run_pipeline(g, cert, search, seed, options, [&](const Signature& s, const EstimatorParams& inner) {
      return estimate_hereditary(s, family, inner);
    });
  } catch (const SizeError&) {
    if (n <= 7) return read_everything();
    throw;
  }
}

Verdict pipeline_general(const Graph& g, const std::set<std::uint64_t>& family, int q, const EstimatorParams& params,
                         const FinalSearchParams& search, std::uint64_t seed, const PipelineOptions& options) {
  params.validate();
  search.validate();
  return run_pipeline(g, params, search, seed, options, [&](const Signature& s, const EstimatorParams& inner) {
    return estimate_general(s, family, q, inner);
  });
}

}  // namespace pdist
