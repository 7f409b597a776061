#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bsl/model.hpp"

namespace bsl {

/// One solved level of a momentum sector.
struct SectorLevel {
  QuantumNumbers quantum_numbers;
  std::vector<double> rapidities;
  double energy = 0.0;
  double residual_norm = 0.0;

  std::int64_t momentum() const { return quantum_numbers.momentum_hint(); }
};

/// All levels of fixed (N, c, L, P) under a quantum-number cutoff M, sorted by
/// energy with lexicographic quantum numbers as the deterministic tie-break.
/// `momentum == nullopt` denotes a merged all-momenta spectrum (supported by
/// the file format; builders here always produce fixed-momentum sectors).
struct SpectrumSector {
  ModelParams params;
  std::optional<std::int64_t> momentum;
  std::int64_t cutoff = 0;
  double tolerance = 0.0;
  std::vector<SectorLevel> levels;
  /// Largest energy below which the level set is proven cutoff-complete.
  /// Absent until a saturation check passes.
  std::optional<double> e_max_certified;
  /// Retention ceiling applied while building, if any.
  std::optional<double> energy_ceiling;

  std::size_t levels_below(double energy) const;
};

struct BuildOptions {
  /// Retain only levels with E <= energy_ceiling (the truncation bell above
  /// the cutoff-complete range is discarded anyway).
  std::optional<double> energy_ceiling;
  /// Worker threads; the result is identical for any thread count.
  int threads = 1;
  /// With a ceiling, skip quantum numbers that provably solve above it
  /// (|lambda_i - (2pi/L) m_i| < (N-1) pi/L bounds every rapidity).
  bool prune_with_ceiling = true;
  std::size_t chunk_size = 16384;
};

/// Solves every enumerated quantum-number set with sum P and assembles the
/// energy-sorted sector. Requires odd N and L = 2pi (integer-momentum
/// bookkeeping). Propagates NonConvergence with the offending quantum
/// numbers; a sector with any failed solve is never emitted.
SpectrumSector build_sector(const ModelParams& params, std::int64_t momentum,
                            std::int64_t cutoff, const SolverOptions& solver_opts = {},
                            const BuildOptions& build_opts = {});

/// Energy below which the cutoff-M sector provably contains every level of
/// the infinite system: ((2pi/L) (M - (N-1)/2))^2. Any level involving
/// |m| >= M has a rapidity exceeding that bound.
double completeness_energy_bound(const ModelParams& params, std::int64_t cutoff);

/// Largest admissible |m| that can contribute a level with E <= ceiling.
std::int64_t max_abs_quantum_number_for_energy(const ModelParams& params,
                                               double ceiling);

struct SaturationReport {
  std::int64_t m_small = 0;
  std::int64_t m_large = 0;
  double e_max = 0.0;
  std::size_t n_levels_small = 0;
  std::size_t n_levels_large_below_emax = 0;
  std::size_t new_levels_found = 0;
  bool certified = false;
  double match_tol = 0.0;
  double max_paired_mismatch = 0.0;
  /// Up to 16 offending quantum-number sets, for diagnostics.
  std::vector<QuantumNumbers> new_level_examples;
};

/// Compares the small-cutoff sector against a larger-cutoff build of the same
/// (params, momentum). Certified iff the large sector holds no level below
/// E_max(small) that is absent from the small sector and all paired energies
/// agree within match_tol.
SaturationReport verify_saturation(const SpectrumSector& small,
                                   const SpectrumSector& large,
                                   double match_tol = 1e-10);

/// Applies a passing report: stamps e_max_certified onto the sector.
void apply_certification(SpectrumSector& sector, const SaturationReport& report);

struct CertifiedBuild {
  SpectrumSector sector;  // e_max_certified stamped
  SaturationReport report;
};

/// The cutoff-doubling certification protocol in one call: builds the sector
/// at M under a retention ceiling (capped at the provable completeness bound
/// for M), rebuilds at 2M under the same ceiling, verifies saturation, and
/// stamps the certified range. Throws IntegrityError if certification
/// unexpectedly fails below the provable bound.
CertifiedBuild build_certified_sector(const ModelParams& params, std::int64_t momentum,
                                      std::int64_t cutoff,
                                      const SolverOptions& solver_opts = {},
                                      BuildOptions build_opts = {},
                                      double match_tol = 1e-10);

/// Among any run of consecutive energies with gaps < tol, keeps only the
/// first. Used when statistics explicitly request degeneracy removal (P = 0
/// sectors). Returns the surviving list and the removed count.
std::pair<std::vector<double>, std::size_t> deduplicate_energies(
    const std::vector<double>& sorted_energies, double tol);

/// In-place variant over sector levels; returns the removed count.
std::size_t deduplicate_levels(SpectrumSector& sector, double tol);

}  // namespace bsl
