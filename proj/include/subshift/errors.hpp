#pragma once

#include <stdexcept>
#include <string>

namespace subshift {

/// Malformed or invalid input. CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation called outside its domain (empty word, undefined restriction,
/// no growing letters, exhausted work budget). CLI exit code 3.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A consistency condition the library itself guarantees was violated.
/// Reaching this is a bug, not a user error. CLI exit code 4.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subshift
