#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace balayage {

// Raised when an operation is called outside its domain (alpha <= -1,
// gamma >= 1, empty center lists, ...). The CLI maps these to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quadrature produced a non-finite value. Carries the offending node.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::complex<double> node)
      : std::runtime_error(what), node_(node) {}

  std::complex<double> node() const { return node_; }

 private:
  std::complex<double> node_;
};

// An arc is too short for the boundary grid it is evaluated on.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace balayage
