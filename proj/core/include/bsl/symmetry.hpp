#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bsl/sector.hpp"

namespace bsl {

/// The momentum-shift equivalence m_i -> m_i + k: rapidities shift by k
/// (L = 2pi), the momentum moves to P + kN and every energy by
/// nu = 2kP + k^2 N, independently of the interaction strength.
struct ShiftMap {
  std::int64_t k = 0;
  std::int64_t nu = 0;
  std::int64_t source_momentum = 0;
  std::int64_t target_momentum = 0;

  static ShiftMap make(std::int64_t source_momentum, std::int64_t k, int n_particles);
};

/// m'_i = m_i + k; ordering preserved, cutoff grows to M + |k|. The rapidity
/// shift law lambda' = lambda + k presumes L = 2pi.
QuantumNumbers shift_quantum_numbers(const QuantumNumbers& m, std::int64_t k);

/// nu = 2kP + k^2 N, exactly.
std::int64_t nu_shift(std::int64_t momentum, std::int64_t k, int n_particles);

/// The independent momentum sectors {0, 1, ..., (N-1)/2} for odd N; all
/// others are shifted copies. Even N is rejected.
std::vector<std::int64_t> independent_momenta(int n_particles);

/// Energy offset nu with E_j(sector p_b) = E_j(sector p_a) + nu, when the two
/// sectors are equivalent via a shift (p_b = p_a + kN) or via reflection plus
/// shift (p_b = -p_a + kN). nullopt when no equivalence exists.
std::optional<std::int64_t> equivalence_nu(std::int64_t p_a, std::int64_t p_b,
                                           int n_particles);

struct EquivalenceReport {
  std::int64_t nu = 0;
  std::size_t levels_compared = 0;
  double max_deviation = 0.0;
  std::optional<std::size_t> first_failure;  // 0-based level index
  double tol = 0.0;
  bool passed = false;
};

/// Checks |E_j(b) - E_j(a) - nu| <= tol for the first n_levels energies of
/// both sectors. Both sectors must hold at least n_levels certified levels;
/// truncation-polluted levels are never compared silently.
EquivalenceReport verify_sector_equivalence(const SpectrumSector& a,
                                            const SpectrumSector& b,
                                            std::int64_t nu, std::size_t n_levels,
                                            double tol = 1e-9);

}  // namespace bsl
