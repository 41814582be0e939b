#pragma once

#include <stdexcept>

namespace rgr {

/// Malformed text input (graph files, embedding dumps, weight files).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A library postcondition failed at runtime, e.g. a feasibility witness that
/// does not replay. Always a bug, never a property of the input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rgr
