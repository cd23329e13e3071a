#pragma once

#include <stdexcept>
#include <string>

namespace cotol {

/// Malformed instance data: unknown ids, empty or duplicate solutions.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request outside the domain of an operation
/// (e.g. empty subset, product decrease reaching the cost itself).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requires an objective kind it was not given.
class UnsupportedObjective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search exceeded its configured size or could not certify its result.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file could not be parsed; the message carries location context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cotol
