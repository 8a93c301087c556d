#pragma once

#include <stdexcept>
#include <string>

namespace floq {

/// Bad input: malformed config, violated precondition, size-guard breach.
/// The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: non-convergence, lost Hermiticity, broken identity.
/// The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace floq
