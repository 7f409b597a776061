#include "bsl/symmetry.hpp"

#include <cmath>

namespace bsl {

ShiftMap ShiftMap::make(std::int64_t source_momentum, std::int64_t k, int n_particles) {
  ShiftMap map;
  map.k = k;
  map.source_momentum = source_momentum;
  map.nu = nu_shift(source_momentum, k, n_particles);
  map.target_momentum = source_momentum + k * n_particles;
  return map;
}

QuantumNumbers shift_quantum_numbers(const QuantumNumbers& m, std::int64_t k) {
  return m.shifted(k);
}

std::int64_t nu_shift(std::int64_t momentum, std::int64_t k, int n_particles) {
  return 2 * k * momentum + k * k * static_cast<std::int64_t>(n_particles);
}

std::vector<std::int64_t> independent_momenta(int n_particles) {
  if (n_particles < 1 || n_particles % 2 == 0) {
    throw ContractViolation("independent_momenta: requires odd N");
  }
  std::vector<std::int64_t> out;
  for (std::int64_t p = 0; p <= (n_particles - 1) / 2; ++p) out.push_back(p);
  return out;
}

std::optional<std::int64_t> equivalence_nu(std::int64_t p_a, std::int64_t p_b,
                                           int n_particles) {
  const std::int64_t n = n_particles;
  // Direct shift: p_b = p_a + kN, energies move by nu(p_a, k).
  if ((p_b - p_a) % n == 0) {
    return nu_shift(p_a, (p_b - p_a) / n, n_particles);
  }
  // Reflection first (E unchanged, P -> -P), then shift: p_b = -p_a + kN.
  if ((p_b + p_a) % n == 0) {
    return nu_shift(-p_a, (p_b + p_a) / n, n_particles);
  }
  return std::nullopt;
}

EquivalenceReport verify_sector_equivalence(const SpectrumSector& a,
                                            const SpectrumSector& b,
                                            std::int64_t nu, std::size_t n_levels,
                                            double tol) {
  if (!(tol > 0.0)) throw ContractViolation("verify_sector_equivalence: tol must be > 0");
  if (!(a.params == b.params)) {
    throw ContractViolation("verify_sector_equivalence: sectors differ in (N, c, L)");
  }
  for (const SpectrumSector* s : {&a, &b}) {
    if (!s->e_max_certified) {
      throw ContractViolation(
          "verify_sector_equivalence: sector lacks a certified energy range");
    }
    if (s->levels_below(*s->e_max_certified) < n_levels) {
      throw ContractViolation(
          "verify_sector_equivalence: fewer certified levels than requested");
    }
  }

  EquivalenceReport report;
  report.nu = nu;
  report.tol = tol;
  report.levels_compared = n_levels;
  const double shift = static_cast<double>(nu);
  for (std::size_t j = 0; j < n_levels; ++j) {
    const double dev = std::abs(b.levels[j].energy - a.levels[j].energy - shift);
    if (dev > report.max_deviation) report.max_deviation = dev;
    if (dev > tol && !report.first_failure) report.first_failure = j;
  }
  report.passed = !report.first_failure.has_value();
  return report;
}

}  // namespace bsl
