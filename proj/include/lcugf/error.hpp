#pragma once

#include <stdexcept>
#include <string>

namespace lcugf {

/// Precondition or argument-range violation detected before any work is done.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The computation produced a vector with (numerically) zero norm.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resolvent was requested exactly on a pole with zero broadening.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result violated an invariant it is supposed to satisfy by construction.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcugf
