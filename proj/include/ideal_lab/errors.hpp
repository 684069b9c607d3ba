#pragma once

#include <stdexcept>
#include <string>

namespace ideal_lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an input value failed (empty generator set, bad ladder, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested window or search bound is too small for the operation.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its own certification.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class NotRepresentableError : public Error {
 public:
  using Error::Error;
};

}  // namespace ideal_lab
