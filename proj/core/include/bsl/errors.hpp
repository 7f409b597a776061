#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsl {

/// Precondition or invariant broken by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Newton failed to reach the requested residual under every guess policy.
/// Carries the best residual achieved and the quantum numbers of the
/// offending state (as doubled values, so half-integers stay exact).
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best_residual,
                 std::vector<std::int64_t> twice_values)
      : std::runtime_error(what),
        best_residual_(best_residual),
        twice_values_(std::move(twice_values)) {}

  double best_residual() const { return best_residual_; }
  const std::vector<std::int64_t>& twice_values() const { return twice_values_; }

 private:
  double best_residual_;
  std::vector<std::int64_t> twice_values_;
};

/// The fitted smooth staircase was unusable (non-monotone, bad mean spacing).
class UnfoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed persisted file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed file whose contents violate a stored invariant.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsl
