#pragma once

#include <stdexcept>
#include <string>

namespace fhmdp {

// Bad argument to a solver, evaluator or simulator call (wrong dimensions,
// out-of-range state or action).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model or fixture violates one of its invariants (row sums, negative
// probabilities, inconsistent table shapes).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed at all. line/column are 1-based; 0 when
// the position is unknown.
class MalformedInput : public std::runtime_error {
 public:
  MalformedInput(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Exhaustive enumeration refused because the policy space exceeds the cap.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fhmdp
