#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bsl/errors.hpp"

namespace bsl {

enum class UnfoldConvention {
  /// Fit the staircase eta(E_n) = n - 1/2 with a polynomial xi(E).
  direct,
  /// Fit E as a polynomial of the staircase and invert it per level. Exact
  /// when the level index is polynomial in sqrt-like spectra (E_n = n^2).
  inverse,
};

/// A level sequence mapped to unit mean spacing, together with the smooth
/// staircase model that produced it. The polynomial acts on the scaled
/// variable u = (x - center)/halfwidth to keep the fit well conditioned.
struct UnfoldedSequence {
  std::vector<double> values;        // xi_n, strictly increasing
  std::vector<double> smooth_coeffs; // c_0 + c_1 u + ... in the fit variable
  double center = 0.0;
  double halfwidth = 1.0;
  UnfoldConvention convention = UnfoldConvention::direct;
  std::size_t source_begin = 0;  // window into the source level list
  std::size_t source_end = 0;

  double mean_spacing() const;
};

/// Least-squares unfolding with a degree-`degree` polynomial staircase model.
/// Requires at least 10*(degree+1) levels; rejects non-monotone smooth fits
/// and windows whose unfolded mean spacing strays outside [0.99, 1.01].
UnfoldedSequence unfold(std::span<const double> levels, int degree,
                        UnfoldConvention convention = UnfoldConvention::direct,
                        std::size_t source_offset = 0);

}  // namespace bsl
