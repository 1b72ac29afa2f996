#pragma once

#include <stdexcept>
#include <string>

namespace cnls {

/// Input outside the mathematical domain of a function (non-finite, k >= 1, chi <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent arguments (dt <= 0, n < 1, empty trace, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Query outside the range covered by a sampled object.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Zero Wronskian: the two Mathieu solutions are not independent.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant of a domain type does not hold.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation declines to run on this input (coarse lattice, dark-background
/// propagation without override, tail evaluator below its cutoff).
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double time, const std::string& what)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace cnls
