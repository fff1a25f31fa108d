#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameters, unknown families, violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix that had to be factorized was exactly singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// The discretization does not resolve the problem (usually: n too small).
class DiscretizationError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations or produced unusable output.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace steklov
