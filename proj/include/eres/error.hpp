#pragma once

#include <stdexcept>
#include <string>

namespace eres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Two terminals (or terminal sets) are not connected through the graph,
/// or an interior node has no path to the boundary.
class NoPath : public Error {
public:
  using Error::Error;
};

/// The block eliminated by a Schur complement is numerically singular.
class SingularBlock : public Error {
public:
  using Error::Error;
};

/// Fixed-point iteration hit its iteration cap before reaching tolerance.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& what, double residual, long iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

private:
  double residual_;
  long iterations_;
};

/// An out-of-sample point has zero kernel mass to the sample.
class IsolatedPoint : public Error {
public:
  using Error::Error;
};

/// A source or sink region selected no nodes.
class EmptyRegion : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace eres
