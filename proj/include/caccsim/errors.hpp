#pragma once

#include <stdexcept>
#include <string>

namespace caccsim {

/// Malformed or inconsistent scenario input. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A controller produced a non-finite command.
class ControllerFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry that the sensor or driver models cannot interpret (non-positive gap, invalid lane line).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace caccsim
