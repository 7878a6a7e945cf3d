#pragma once

#include <stdexcept>
#include <string>

namespace l2ext {

// Rejected input: malformed arguments, dimension mismatches, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation requested outside the set where a function is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// The requested model/scenario combination has no catalog entry.
class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergence, loss of definiteness, degenerate sampling.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace l2ext
