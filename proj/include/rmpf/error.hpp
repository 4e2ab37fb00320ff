#pragma once

#include <stdexcept>
#include <string>

namespace rmpf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

/// Dimension or modulus mismatch between operands, or dims violating m > n.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed bytes: bad magic, truncated blob, out-of-range entries.
class ParseError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class KeyConfirmationFailed : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// Transport failure: peer closed, refused, or timed out.
class ConnectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmpf
