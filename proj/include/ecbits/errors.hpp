#pragma once

#include <stdexcept>
#include <string>

namespace ecbits {

// Invalid argument for a mathematical operation (zero inverse, singular curve, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented hypothesis of an operation does not hold (gcd conditions, ordering, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A polynomial does not have the structure a classification promised.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subgroup of the requested order is not unique (or does not exist).
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed the configured work cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold by construction failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ecbits
