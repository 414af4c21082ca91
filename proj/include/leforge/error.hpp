#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or job file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Degree, basis size or truncation cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The m-adic colength sequence did not settle below k_max.
class StabilizationError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// Random genericity sampling did not reach agreement within its budget.
class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace leforge
