#pragma once

#include <stdexcept>
#include <string>

namespace xsched {

/// Input data violates a type invariant (unsorted sizes, unbalanced targets, ...).
class InvalidInstanceError : public std::runtime_error {
 public:
  explicit InvalidInstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// Arguments are structurally incompatible (dimension mismatch, unknown pivot, ...).
/// Distinct from a failing verification report: the report describes a well-formed
/// but wrong assignment, this error means the question itself was malformed.
class InvalidArgumentError : public std::runtime_error {
 public:
  explicit InvalidArgumentError(const std::string& what) : std::runtime_error(what) {}
};

/// A guaranteed internal invariant was violated. Always a bug, never an input problem.
class InternalInvariantError : public std::logic_error {
 public:
  explicit InternalInvariantError(const std::string& what) : std::logic_error(what) {}
};

/// A brute-force search exceeded its node budget. Distinct from infeasibility:
/// the search was cut short, nothing is known about the instance.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// A checked 128-bit operation overflowed. Raised instead of wrapping silently.
class ArithmeticOverflowError : public std::runtime_error {
 public:
  explicit ArithmeticOverflowError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xsched
