#pragma once

#include <stdexcept>
#include <string>

namespace taut {

/// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorKind : int {
  internal = 1,
  budget_exceeded = 2,
  invalid_domain = 3,
  rank_deficient = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Search space larger than the configured oracle budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget_exceeded, what) {}
};

/// (g, n) outside the stable range, or a profile the operation cannot accept.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::invalid_domain, what) {}
};

class RankDeficient : public Error {
 public:
  RankDeficient(const std::string& what, int rank, int unknowns)
      : Error(ErrorKind::rank_deficient, what), rank_(rank), unknowns_(unknowns) {}
  int rank() const noexcept { return rank_; }
  int unknowns() const noexcept { return unknowns_; }

 private:
  int rank_;
  int unknowns_;
};

/// An identity that must hold exactly did not. Always a bug or a
/// counterexample, never a tuning problem.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(ErrorKind::internal, what) {}
};

/// Malformed input (bad permutation, non-positive part, ...). Reported with
/// the same exit code as an out-of-range (g, n).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_domain, what) {}
};

}  // namespace taut
