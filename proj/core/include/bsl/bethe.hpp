#pragma once

#include <span>
#include <vector>

#include "bsl/model.hpp"
#include "bsl/numeric.hpp"

namespace bsl {

/// Bethe residual F with
///   F_i = lambda_i - (2pi/L) m_i + (2/L) sum_{k != i} atan((lambda_i - lambda_k)/c).
/// A Bethe state is exactly a zero of F.
std::vector<double> bethe_residual(std::span<const double> rapidities,
                                   const QuantumNumbers& m,
                                   const ModelParams& params);

/// Analytic Jacobian dF_i/dlambda_j. Symmetric, every row sums to 1, and
/// strictly diagonally dominant, hence positive definite.
SquareMatrix bethe_jacobian(std::span<const double> rapidities,
                            const ModelParams& params);

enum class CouplingLimit { infinite_coupling, zero_coupling };

/// Closed-form rapidities in the free-fermion (c -> infinity) and free-boson
/// (c -> 0) limits.
std::vector<double> limit_rapidities(const QuantumNumbers& m,
                                     const ModelParams& params,
                                     CouplingLimit limit);

/// Damped Newton solve of the Bethe equations for one quantum-number set.
/// Guess cascade under auto_select: the limit start matching the regime
/// (free-fermion for n/c <= 1, free-boson otherwise), then the other limit,
/// then continuation in c from the near-fermionized regime. Throws
/// NonConvergence when every policy stagnates above the tolerance.
BetheState solve_state(const QuantumNumbers& m, const ModelParams& params,
                       const SolverOptions& opts = {});

/// Conserved charge Q_k = sum_i lambda_i^k; Q_1 = P, Q_2 = E.
double conserved_charge(const BetheState& state, int k);

}  // namespace bsl
