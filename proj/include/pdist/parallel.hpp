#pragma once

// Execution policy shared by the enumeration kernels. Every kernel has a
// serial reference path and an OpenMP path; tests compare the two.

#include <cstdint>

namespace pdist {

enum class Exec { serial, parallel };

/// Running maximum that breaks ties toward the smaller candidate index, so
/// parallel and serial reductions pick the same witness.
struct ArgMax {
  double value = -1.0;
  std::uint64_t index = ~std::uint64_t{0};

  void offer(double v, std::uint64_t i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void merge(const ArgMax& other) { offer(other.value, other.index); }
};

/// Running minimum with the same tie rule.
struct ArgMin {
  double value = 1e300;
  std::uint64_t index = ~std::uint64_t{0};

  void offer(double v, std::uint64_t i) {
    if (v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void merge(const ArgMin& other) { offer(other.value, other.index); }
};

}  // namespace pdist
