#ifndef CALABI_ERRORS_HPP
#define CALABI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace calabi {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input (rejected before any computation starts).
struct InvalidArgument : Error {
  using Error::Error;
};

// Source text does not conform to the expression grammar.
struct ParseError : Error {
  std::size_t offset;  // byte offset into the source string
  ParseError(const std::string& msg, std::size_t off)
      : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Runtime evaluation failure: log/sqrt of a non-positive argument,
// division by zero, point outside a declared domain, non-finite result.
struct EvalError : Error {
  using Error::Error;
};

struct NotConvexAtPoint : Error {
  using Error::Error;
};

struct DegeneratePlane : Error {
  using Error::Error;
};

struct VanishingPick : Error {
  using Error::Error;
};

struct UnsupportedDimension : Error {
  using Error::Error;
};

struct BadDimension : Error {
  using Error::Error;
};

struct ZeroExponent : Error {
  using Error::Error;
};

struct BlowUp : Error {
  using Error::Error;
};

}  // namespace calabi

#endif
