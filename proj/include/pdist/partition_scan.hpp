#pragma once

// Shared machinery for kernels that scan every equipartition of a small graph
// (property distance, index maximization, the accepted-slab search).

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "pdist/errors.hpp"
#include "pdist/graph.hpp"

namespace pdist {

/// Part sizes and cross-part edge counts of one equipartition.
struct BlockStats {
  int s = 0;
  std::vector<int> sizes;
  std::vector<int> edges;  // s x s, entry (p,q) = e(V_p,V_q), p != q

  double weight(std::size_t p, std::size_t q) const {
    return static_cast<double>(sizes[p]) * static_cast<double>(sizes[q]);
  }
  double density(std::size_t p, std::size_t q) const {
    return static_cast<double>(edges[p * static_cast<std::size_t>(s) + q]) / weight(p, q);
  }
  /// (1/s^2) sum_{p<q} d^2.
  double index() const {
    double acc = 0.0;
    for (std::size_t p = 0; p < static_cast<std::size_t>(s); ++p)
      for (std::size_t q = p + 1; q < static_cast<std::size_t>(s); ++q) acc += density(p, q) * density(p, q);
    return acc / (static_cast<double>(s) * s);
  }
};

/// Bit-row view of a graph with n <= 64 plus the equipartition stream for s parts.
class PartitionScan {
 public:
  PartitionScan(const Graph& g, int s) : n_(g.n()), s_(s), rows_(static_cast<std::size_t>(g.n()), 0) {
    if (g.n() > 64) throw SizeError("exhaustive partition scans support n <= 64");
    for (int u = 0; u < n_; ++u) rows_[static_cast<std::size_t>(u)] = g.row(u)[0];
  }

  int n() const { return n_; }
  int s() const { return s_; }
  std::uint64_t count() const { return equipartition_count(n_, s_); }

  template <typename Label>
  BlockStats stats(std::span<const Label> labels) const {
    const auto s = static_cast<std::size_t>(s_);
    BlockStats st{s_, std::vector<int>(s, 0), std::vector<int>(s * s, 0)};
    std::uint64_t masks[64] = {};
    for (int v = 0; v < n_; ++v) {
      const auto p = static_cast<std::size_t>(labels[static_cast<std::size_t>(v)]);
      masks[p] |= std::uint64_t{1} << v;
      ++st.sizes[p];
    }
    for (int u = 0; u < n_; ++u) {
      const auto p = static_cast<std::size_t>(labels[static_cast<std::size_t>(u)]);
      for (std::size_t q = p + 1; q < s; ++q)
        st.edges[p * s + q] += std::popcount(rows_[static_cast<std::size_t>(u)] & masks[q]);
    }
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t q = p + 1; q < s; ++q) st.edges[q * s + p] = st.edges[p * s + q];
    return st;
  }

  /// Every equipartition as n consecutive labels, in canonical order.
  std::vector<std::uint8_t> materialize() const {
    std::vector<std::uint8_t> flat;
    flat.reserve(static_cast<std::size_t>(count()) * static_cast<std::size_t>(n_));
    for_each_equipartition(n_, s_, [&](std::span<const int> labels) {
      for (int l : labels) flat.push_back(static_cast<std::uint8_t>(l));
      return true;
    });
    return flat;
  }

  std::span<const std::uint8_t> labels(const std::vector<std::uint8_t>& flat, std::size_t k) const {
    return {flat.data() + k * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }

 private:
  int n_;
  int s_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace pdist
