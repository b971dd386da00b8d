#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>
#include <string>

namespace veilkit {

// Error taxonomy shared by every module. The CLI maps ShapeError,
// ValidationError and DomainError to exit code 2 and NumericError to 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions: non-square matrices, length mismatches, n > dim.
struct ShapeError : Error {
  using Error::Error;
};

// Malformed values: probabilities that do not sum to one, labels outside
// {0,1}, empty inputs, bad config keys.
struct ValidationError : Error {
  using Error::Error;
};

// Arguments outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A matrix that must be positive definite is not, even after ridging.
struct SingularError : Error {
  using Error::Error;
};

// A fit whose defining vectors vanished (e.g. zero cross-covariance).
struct DegenerateError : Error {
  using Error::Error;
};

// Non-finite loss or gradient during training; carries diagnostics.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace veilkit
