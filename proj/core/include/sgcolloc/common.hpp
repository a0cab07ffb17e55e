#ifndef SGCOLLOC_COMMON_HPP
#define SGCOLLOC_COMMON_HPP

#include <stdexcept>
#include <string>

namespace sgc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid parameter or configuration value.
struct ConfigError : Error {
  using Error::Error;
};

/// Numeric failure: non-convergence, loss of coercivity, overflow.
struct NumericError : Error {
  using Error::Error;
};

/// A requested computation exceeds a configured hard cap.
struct BudgetError : Error {
  using Error::Error;
};

/// API misuse (length mismatch, norm requested on unsupported data, ...).
struct UsageError : Error {
  using Error::Error;
};

}  // namespace sgc

#endif
