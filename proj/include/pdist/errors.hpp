#pragma once

#include <stdexcept>
#include <string>

namespace pdist {

/// Precondition violated by the caller (mismatched sizes, empty sets, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its enumeration cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed graph / signature / partition file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The final-partition search found no admissible size.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdist
