#pragma once

#include <stdexcept>
#include <string>

namespace specdet {

// Requested evaluation point lies outside the meromorphic domain of the
// quantity (a pole of a zeta function, s = 1 for the Riemann zeta, ...).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified error bound could not be pushed below the requested tolerance.
class accuracy_error : public std::runtime_error {
public:
  explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// A determinant was requested for an operator with a non-positive mode.
class singular_operator_error : public std::runtime_error {
public:
  explicit singular_operator_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Inputs are structurally invalid (empty spectrum, inconsistent kernel
// bookkeeping, out-of-range scattering data).
class degenerate_input_error : public std::runtime_error {
public:
  explicit degenerate_input_error(const std::string& what)
      : std::runtime_error(what) {}
};

// The requested combination of model and operation has no meaning in the
// product-model calculus (for example an asymptotic law evaluated outside
// its hypotheses).
class unsupported_model_error : public std::runtime_error {
public:
  explicit unsupported_model_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Internal numerical failure (overflow, non-finite intermediate).
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specdet
