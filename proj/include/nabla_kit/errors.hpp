#pragma once

#include <stdexcept>
#include <string>

namespace nabla_kit {

// Caller broke a documented precondition (bad indices, duplicate nodes,
// orders exceeding the grid, malformed input).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point or stencil left the declared domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A function was asked for a derivative order it does not provide.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Evaluation produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The computation is well-posed but numerically degenerate (vanishing
// denominators, nonpositive values under a logarithm, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nabla_kit
