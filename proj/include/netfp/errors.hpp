#pragma once

#include <stdexcept>

namespace netfp {

// Precondition violated by an argument (bad index, non-simplex vector, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid scenario or option set.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netfp
