#pragma once

#include <stdexcept>
#include <string>

namespace subsym {

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the range an operation accepts.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A materialized object would exceed the configured cell-count cap.
class SizeError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Malformed input text (spec files, patch files, command line values).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace subsym
