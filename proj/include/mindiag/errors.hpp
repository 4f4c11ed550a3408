#pragma once

#include <stdexcept>
#include <string>

namespace mindiag {

// Bad caller input: malformed arguments, points outside a domain, violated
// preconditions. The CLI maps these to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside a function's domain (profile domain, the hub itself, ...).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// Dilation of a pair of coincident points. Kept distinct from DomainError
// so callers can tell "infinite" apart from "undefined".
class InfiniteDilationError : public InputError {
 public:
  using InputError::InputError;
};

// Numeric failure: a root finder did not converge, a bracket could not be
// formed, a construction step produced inconsistent topology. Exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input in (or too close to) a degenerate configuration. Perturb and retry.
class DegeneracyError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace mindiag
