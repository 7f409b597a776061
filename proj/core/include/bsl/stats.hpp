#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bsl/unfold.hpp"

namespace bsl {

/// Nearest-neighbor spacings s_n = E_n - E_{n-1} of a sorted list.
std::vector<double> spacings(std::span<const double> sorted_levels);

/// Normalized level-spacing density over [0, s_max]; mass beyond s_max is
/// excluded from the bins and reported separately, so bin mass plus overflow
/// is exactly one sample-average.
struct LsdHistogram {
  double s_max = 0.0;
  std::vector<std::size_t> counts;
  std::vector<double> densities;
  std::size_t n_samples = 0;
  double overflow_mass = 0.0;

  double bin_width() const { return s_max / static_cast<double>(counts.size()); }
  double bin_center(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) * bin_width();
  }
  /// Poisson reference averaged over bin i: (e^-a - e^-b)/(b - a).
  double poisson_bin_density(std::size_t i) const;
  static double poisson_density(double s);
};

LsdHistogram lsd_histogram(const UnfoldedSequence& unfolded, int n_bins, double s_max);

/// Consecutive-spacing-ratio statistic chi_n = min(xi_n, 1/xi_n) with
/// xi_n = s_n / s_{n-1}, computed on raw (un-unfolded) levels. A zero
/// spacing yields chi = 0 (fully clustered) and is flagged, not rejected.
struct RatioSeries {
  std::vector<double> chi;
  std::vector<double> windowed_means;  // over full blocks of window_size
  std::size_t window_size = 0;
  std::vector<std::size_t> zero_spacing_indices;

  double mean_chi() const;
};

RatioSeries ratio_statistic(std::span<const double> sorted_levels,
                            std::size_t window_size = 500);

/// Cumulative sums of unit-mean exponential spacings from a fixed,
/// platform-independent generator (mt19937_64 plus an explicit inverse-CDF
/// transform). Same seed, same sequence, everywhere.
std::vector<double> synthetic_poisson_levels(std::size_t n, std::uint64_t seed);

}  // namespace bsl
