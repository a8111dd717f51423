#pragma once

#include <stdexcept>
#include <string>

namespace dustlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (squares, nodes, cells) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// eps lies outside the window in which the requested decomposition or
/// recursion is valid.
class EpsOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace dustlab
