#pragma once

#include <stdexcept>
#include <string>

namespace liecat {

// Shape or field mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A precondition on a numerical argument failed (not a group member, not
// tangent, not Hermitian, gradient not small enough, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tolerance-based grouping could not be decided; the caller has to pick a
// different tolerance.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liecat
