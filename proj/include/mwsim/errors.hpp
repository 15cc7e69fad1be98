#pragma once

#include <stdexcept>
#include <string>

namespace mwsim {

/// Bad configuration: unknown key, malformed value, violated invariant.
/// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: quadrature tolerance not reached, sample budget
/// exceeded, zero-mass density, window too small for the pattern.
/// CLI maps this to exit code 3.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mwsim
