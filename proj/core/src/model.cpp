#include "bsl/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bsl {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

double parse_full(const std::string& token) {
  if (token.empty()) throw ParseError("empty numeric token");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    throw ParseError("malformed numeric token '" + token + "'");
  }
  return v;
}

ModelParams::ModelParams(int n_particles, double coupling, double ring_length)
    : n_(n_particles), coupling_(coupling), length_(ring_length) {
  if (n_ < 1) throw ContractViolation("ModelParams: n_particles must be >= 1");
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw ContractViolation("ModelParams: ring_length must be positive and finite");
  }
  if (!(coupling_ > 0.0) || !std::isfinite(coupling_)) {
    throw ContractViolation(
        "ModelParams: coupling must be positive and finite; use limit_rapidities "
        "for the c=0 and c=infinity limits");
  }
}

ModelParams ModelParams::from_density_ratio(int n_particles, double n_over_c,
                                            double ring_length) {
  if (!(n_over_c > 0.0) || !std::isfinite(n_over_c)) {
    throw ContractViolation("ModelParams: n/c must be positive and finite");
  }
  const double density = static_cast<double>(n_particles) / ring_length;
  return ModelParams(n_particles, density / n_over_c, ring_length);
}

QuantumNumbers::QuantumNumbers(std::vector<std::int64_t> twice_values,
                               std::int64_t cutoff)
    : twice_(std::move(twice_values)), cutoff_(cutoff) {
  if (twice_.empty()) throw ContractViolation("QuantumNumbers: empty value set");
  if (cutoff_ < 1) throw ContractViolation("QuantumNumbers: cutoff must be >= 1");
  std::sort(twice_.begin(), twice_.end());
  for (std::size_t i = 1; i < twice_.size(); ++i) {
    if (twice_[i] == twice_[i - 1]) {
      throw ContractViolation("QuantumNumbers: values must be distinct");
    }
  }
  // Parity rule: integers (even doubled values) iff N is odd.
  const bool n_odd = twice_.size() % 2 == 1;
  for (std::int64_t t : twice_) {
    const bool is_integer = (t % 2) == 0;
    if (is_integer != n_odd) {
      throw ContractViolation(
          "QuantumNumbers: values must be integers for odd N and half-odd-integers "
          "for even N");
    }
    if (std::abs(t) >= 2 * cutoff_) {
      throw ContractViolation("QuantumNumbers: |m| < cutoff violated");
    }
  }
}

QuantumNumbers QuantumNumbers::from_integers(std::span<const std::int64_t> values,
                                             std::int64_t cutoff) {
  std::vector<std::int64_t> twice(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) twice[i] = 2 * values[i];
  return QuantumNumbers(std::move(twice), cutoff);
}

std::int64_t QuantumNumbers::momentum_hint() const {
  std::int64_t twice_sum = 0;
  for (std::int64_t t : twice_) twice_sum += t;
  // Sum of N integers (odd N) or of an even count of half-odd-integers: always
  // an integer.
  if (twice_sum % 2 != 0) {
    throw ContractViolation("QuantumNumbers: momentum sum is not an integer");
  }
  return twice_sum / 2;
}

QuantumNumbers QuantumNumbers::shifted(std::int64_t k) const {
  std::vector<std::int64_t> twice(twice_);
  for (auto& t : twice) t += 2 * k;
  return QuantumNumbers(std::move(twice), cutoff_ + std::abs(k));
}

QuantumNumbers QuantumNumbers::reflected() const {
  std::vector<std::int64_t> twice(twice_);
  for (auto& t : twice) t = -t;
  return QuantumNumbers(std::move(twice), cutoff_);
}

bool lex_less(const QuantumNumbers& a, const QuantumNumbers& b) {
  return std::lexicographical_compare(a.twice_values().begin(), a.twice_values().end(),
                                      b.twice_values().begin(), b.twice_values().end());
}

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw ContractViolation("SolverOptions: tolerance must be > 0");
  if (max_iterations < 1) throw ContractViolation("SolverOptions: max_iterations must be >= 1");
  if (!(damping > 0.0) || damping > 1.0) {
    throw ContractViolation("SolverOptions: damping must lie in (0, 1]");
  }
}

}  // namespace bsl
