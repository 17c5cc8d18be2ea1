#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Invalid argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input breaks a documented precondition (e.g. an unnormalized state).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Conditioning on an outcome whose probability is numerically zero.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Squeezing parameter requested for a state with vanishing mean spin.
class SingularStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated representation lost more probability than allowed.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distribution does not have the shape an analysis assumes.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracket without a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes to the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dicke
