#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace akde {

// Numerical failure: quadrature that cannot reach its tolerance, NaN/Inf from
// an integrand, finite-difference noise swamping a series term.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested a closed-form asymptotic quantity for a spec that has none
// (proper-role inverse Gaussian, plain Gaussian baseline).
class UnsupportedAsymptotics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation needs more observations than the sample provides.
class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The sample-smoothing expansion assumes the standardized kernel argument is
// monotone in the sample coordinate; raised when a bandwidth shape breaks that.
class MonotonicityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data. line is 1-based; 0 means the location is unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  std::size_t line;
};

}  // namespace akde
