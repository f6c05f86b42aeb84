#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oddminor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact solver was asked to run above its configured size limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateParams : public Error {
 public:
  using Error::Error;
};

class CouplingViolation : public Error {
 public:
  using Error::Error;
};

/// A pullback overlay produced a triangle with a common colour; only possible
/// when an input layer was not triangle-free.
class MonochromaticTriangle : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure: minority-edge resolution left a triangle.
class ResidualTriangle : public Error {
 public:
  using Error::Error;
};

class InvalidPairing : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Reached a state the preconditions rule out. Signals a logic bug.
class ImpossibleState : public Error {
 public:
  using Error::Error;
};

/// A probe was called outside the hypothesis of the bound it measures.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class UnknownTarget : public Error {
 public:
  using Error::Error;
};

/// Decoding failure. `offset()` is the byte (or line, for line-based
/// formats) where the problem was detected.
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace oddminor
