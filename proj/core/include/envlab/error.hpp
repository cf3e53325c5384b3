#pragma once

#include <stdexcept>
#include <string>

namespace envlab {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, element or map was handed to an operation for a different space
/// or family.
class KindError : public Error {
 public:
  using Error::Error;
};

/// Invalid flow parameters, detector resources or config values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Two sampled maps that were expected to share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// A search ran out of time steps before finding a witness. Carries the best
/// value reached so callers can report it.
class HorizonExhausted : public Error {
 public:
  HorizonExhausted(const std::string& what, double best)
      : Error(what), best_(best) {}
  double best() const noexcept { return best_; }

 private:
  double best_;
};

}  // namespace envlab
