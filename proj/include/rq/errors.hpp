#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rq {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression text could not be parsed; `offset` is the byte position.
struct ParseError : Error {
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

/// Numeric evaluation failed (unassigned symbol, division by zero, branch guard).
struct EvalError : Error {
  using Error::Error;
};

/// Structural misuse: chart mismatch, degree caps, invalid construction.
struct DomainError : Error {
  using Error::Error;
};

/// A numeric procedure refused or produced non-finite values.
struct NumericError : Error {
  using Error::Error;
};

/// Manifest rejected; `path` names the offending field, e.g. "metric[0][1]".
struct ManifestError : Error {
  ManifestError(const std::string& message, std::string field_path)
      : Error(field_path.empty() ? message : message + " [" + field_path + "]"),
        path(std::move(field_path)) {}
  std::string path;
};

/// Cooperative cancellation was requested by the caller.
struct CancelledError : Error {
  CancelledError() : Error("operation cancelled") {}
};

}  // namespace rq
