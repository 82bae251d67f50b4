#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace triwave {

/// Caller broke a precondition (length mismatch, invalid parameter, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Box too short for the requested profile to decay to round-off.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UndefinedMultiplier : public std::runtime_error {
 public:
  explicit UndefinedMultiplier(int component)
      : std::runtime_error("multiplier undefined: component u" +
                           std::to_string(component) + " has zero mass"),
        component_(component) {}
  int component() const noexcept { return component_; }

 private:
  int component_;
};

class UndefinedQuotient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of an iterative or time-stepping computation.
/// The CLI maps these to exit status 2.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalFailure {
 public:
  NonConvergence(const std::string& what, std::vector<double> energy_trace)
      : NumericalFailure(what), energy_trace_(std::move(energy_trace)) {}
  const std::vector<double>& energy_trace() const noexcept { return energy_trace_; }

 private:
  std::vector<double> energy_trace_;
};

}  // namespace triwave
