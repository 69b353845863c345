#pragma once

#include <stdexcept>

namespace groupcast {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the operation's domain (receiver index, K, unknown set).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A family member that is empty or not contained in [1:K].
class InvalidFamilyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Request exceeds what the toolkit supports (K > 16, vertex dimension > 6).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class UnboundedError : public Error {
 public:
  using Error::Error;
};

// Malformed input document (JSON schema, rational string).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace groupcast
