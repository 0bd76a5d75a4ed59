#pragma once

#include <stdexcept>
#include <string>

namespace susyqm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its sweep limit.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double final_off_norm)
      : Error(what), final_off_norm_(final_off_norm) {}
  double final_off_norm() const noexcept { return final_off_norm_; }

 private:
  double final_off_norm_;
};

/// Two routes to the same quantity disagree, or a post-condition that holds
/// by construction failed numerically.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

/// A positive eigenvalue without a partner in the other sector.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or value.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace susyqm
