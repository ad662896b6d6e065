#pragma once

#include <stdexcept>
#include <string>

namespace tns {

// Configuration / input contract violation. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical blow-up (NaN/overflow in a solver state). CLI exit code 3.
class BlowUpError : public std::runtime_error {
public:
  BlowUpError(const std::string& what, double t) : std::runtime_error(what), t_blowup(t) {}
  double t_blowup;
};

}  // namespace tns
