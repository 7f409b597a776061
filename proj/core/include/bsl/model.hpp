#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bsl/errors.hpp"
#include "bsl/numeric.hpp"

namespace bsl {

/// Lieb-Liniger model parameters: N bosons on a ring of length L with a
/// repulsive contact interaction of strength c. Units hbar = 2m = 1.
/// The c = 0 and c = infinity limits are handled by dedicated limit
/// evaluators, never by this type.
class ModelParams {
 public:
  ModelParams(int n_particles, double coupling, double ring_length = two_pi);

  /// Construct from the crossover parameter n/c with n = N/L.
  static ModelParams from_density_ratio(int n_particles, double n_over_c,
                                        double ring_length = two_pi);

  int n_particles() const { return n_; }
  double coupling() const { return coupling_; }
  double ring_length() const { return length_; }
  double density() const { return static_cast<double>(n_) / length_; }
  /// n/c, always recomputed, never stored.
  double density_ratio() const { return density() / coupling_; }

  bool operator==(const ModelParams&) const = default;

 private:
  int n_;
  double coupling_;
  double length_;
};

/// An ordered set of N distinct quantum numbers. Stored as doubled values so
/// that the half-odd-integers required for even N stay exact. Parity rule:
/// integers iff N is odd.
class QuantumNumbers {
 public:
  /// `twice_values` = 2*m_i in any order; sorted on construction.
  QuantumNumbers(std::vector<std::int64_t> twice_values, std::int64_t cutoff);

  /// Integer quantum numbers (odd N).
  static QuantumNumbers from_integers(std::span<const std::int64_t> values,
                                      std::int64_t cutoff);

  std::size_t size() const { return twice_.size(); }
  double value(std::size_t i) const { return 0.5 * static_cast<double>(twice_[i]); }
  std::int64_t twice(std::size_t i) const { return twice_[i]; }
  const std::vector<std::int64_t>& twice_values() const { return twice_; }
  std::int64_t cutoff() const { return cutoff_; }

  /// Exact total momentum sum(m_i), an integer for both parities.
  std::int64_t momentum_hint() const;

  /// All quantum numbers shifted by the integer k; cutoff grows by |k|.
  QuantumNumbers shifted(std::int64_t k) const;

  /// Reflection m -> -m (order re-normalized).
  QuantumNumbers reflected() const;

  bool same_values(const QuantumNumbers& other) const { return twice_ == other.twice_; }
  bool operator==(const QuantumNumbers&) const = default;

 private:
  std::vector<std::int64_t> twice_;
  std::int64_t cutoff_;
};

/// Strict lexicographic order on the value lists (used as the deterministic
/// tie-break for equal energies).
bool lex_less(const QuantumNumbers& a, const QuantumNumbers& b);

enum class GuessPolicy { auto_select, strong_coupling, weak_coupling, continuation };

struct SolverOptions {
  /// Residual max-norm target. Note that the attainable floor is set by the
  /// rapidity magnitudes: roughly 2*ulp(max|lambda|). For |lambda| ~ 50 that
  /// is a few 1e-15, so large-cutoff sector builds should request ~1e-13.
  double tolerance = 1e-15;
  int max_iterations = 200;
  /// Initial Newton step scale in (0, 1]; halved when the residual grows,
  /// restored after two successful steps.
  double damping = 1.0;
  GuessPolicy guess_policy = GuessPolicy::auto_select;

  void validate() const;
};

/// A solved Bethe state: rapidities plus the derived observables.
struct BetheState {
  QuantumNumbers quantum_numbers;
  std::vector<double> rapidities;  // strictly increasing
  double energy = 0.0;             // sum lambda_i^2
  double momentum = 0.0;           // sum lambda_i
  double residual_norm = 0.0;      // max-norm of the Bethe residual
  std::optional<std::vector<double>> charges;
};

}  // namespace bsl
