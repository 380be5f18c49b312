#pragma once

#include <stdexcept>
#include <string>

namespace sfnet {

// Invalid parameters, malformed files, missing configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructed artifact violates one of its invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resource limits: LID space, VL count, retry bounds.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfnet
