#pragma once

#include <stdexcept>
#include <string>

namespace diter {

/// A coefficient or input value is non-finite or outside its documented range.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An interior site depends on a neighbor that is neither interior nor boundary.
struct MalformedDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// NaN/Inf appeared where a finite value is required to continue.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The catalyst quadratic has no real roots (4*a_plus*a_minus > 1).
struct ComplexRoots : std::domain_error {
  using std::domain_error::domain_error;
};

/// The catalyst normalization denominator is not positive.
struct UnstableProfile : std::domain_error {
  using std::domain_error::domain_error;
};

/// The coefficient of y(n) in the second-order discretization vanishes.
struct SingularDiscretization : std::domain_error {
  using std::domain_error::domain_error;
};

/// A direct factorization hit a zero pivot.
struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem-file syntax error; carries the 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& what_arg)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what_arg),
        line(line_number) {}
  int line;
};

}  // namespace diter
