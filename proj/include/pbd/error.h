/**
 * error.h
 *
 * Error types shared by every module. Each error carries a stable,
 * machine-readable code that the HTTP service and CLI surface verbatim.
 */

#ifndef PBD_ERROR_H_
#define PBD_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pbd {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Malformed PDDL or literal text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& expected)
      : Error("ParseError", "line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": expected " +
                                expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

/// Raised when a ground action's preconditions do not hold under the learned
/// model. Carries the unsatisfied ground literals in canonical order.
class PreconditionFailure : public Error {
 public:
  PreconditionFailure(const std::string& message,
                      std::vector<std::string> unsatisfied)
      : Error("PreconditionFailure", message),
        unsatisfied_(std::move(unsatisfied)) {}

  /// Canonical text of each unsatisfied literal.
  const std::vector<std::string>& unsatisfied() const { return unsatisfied_; }

 private:
  std::vector<std::string> unsatisfied_;
};

/// Physical failure reported by the world simulator. `constraint` is the
/// canonical text of the violated condition, e.g. `occupied(A)` or
/// `not_at(redObj,A)`.
class ConstraintViolation : public Error {
 public:
  explicit ConstraintViolation(std::string constraint)
      : Error("ConstraintViolation", "constraint violated: " + constraint),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace pbd

#endif  // PBD_ERROR_H_
