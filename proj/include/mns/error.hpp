#pragma once

#include <stdexcept>
#include <string>

namespace mns {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (element strings, scalars, series files, words).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (zero divisor, mixed
/// fields, mismatched series contexts, non-positive generators, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bound exceeded the exhaustive-search guard limits.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace mns
