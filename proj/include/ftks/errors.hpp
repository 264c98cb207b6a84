#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftks {

/// Malformed instance or solution document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A document parsed but violates an instance invariant.
struct ValidationError : std::runtime_error {
  ValidationError(std::string invariant, const std::string& what,
                  std::vector<std::size_t> witnesses = {})
      : std::runtime_error(what), invariant_(std::move(invariant)), witnesses_(std::move(witnesses)) {}
  const std::string& invariant() const noexcept { return invariant_; }
  /// Joint point indices involved in the violation, if any.
  const std::vector<std::size_t>& witnesses() const noexcept { return witnesses_; }

 private:
  std::string invariant_;
  std::vector<std::size_t> witnesses_;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// No candidate radius admits a solution.
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The LP backend could not certify feasibility or infeasibility.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(unsigned long long required, const std::string& what)
      : std::runtime_error(what), required_(required) {}
  unsigned long long required() const noexcept { return required_; }

 private:
  unsigned long long required_;
};

struct PreconditionViolated : std::logic_error {
  using std::logic_error::logic_error;
};

/// A round-or-cut loop exceeded its iteration cap; indicates cycling.
struct IterationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ftks
