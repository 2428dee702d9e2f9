#pragma once

#include <stdexcept>

namespace hwb {

// Bad input: invalid program, malformed file, precondition violated.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget (steps, memory, fuel) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class VersionError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hwb
