#pragma once

#include <stdexcept>
#include <string>

namespace ubmlab {

// Precondition failures on scalar arguments (negative time, r outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Problem size outside the supported range.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Structural contract violations on inputs (non-unitary matrix, unsorted times, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense linear algebra failure.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ubmlab
