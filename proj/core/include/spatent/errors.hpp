#pragma once

#include <stdexcept>
#include <string>

namespace spatent {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameters or configuration input.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure did not reach its accuracy target
/// (quadrature doubling, aliasing guard, spiral-spectrum decay).
class ConvergenceError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace spatent
