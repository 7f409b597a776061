#include "bsl/stats.hpp"

#include <cmath>
#include <random>

#include "bsl/numeric.hpp"

namespace bsl {

std::vector<double> spacings(std::span<const double> sorted_levels) {
  if (sorted_levels.size() < 2) {
    throw ContractViolation("spacings: need at least two levels");
  }
  std::vector<double> out(sorted_levels.size() - 1);
  for (std::size_t i = 1; i < sorted_levels.size(); ++i) {
    if (sorted_levels[i] < sorted_levels[i - 1]) {
      throw ContractViolation("spacings: levels not sorted ascending");
    }
    out[i - 1] = sorted_levels[i] - sorted_levels[i - 1];
  }
  return out;
}

double LsdHistogram::poisson_density(double s) { return std::exp(-s); }

double LsdHistogram::poisson_bin_density(std::size_t i) const {
  const double a = static_cast<double>(i) * bin_width();
  const double b = a + bin_width();
  return (std::exp(-a) - std::exp(-b)) / (b - a);
}

LsdHistogram lsd_histogram(const UnfoldedSequence& unfolded, int n_bins, double s_max) {
  if (n_bins < 5) throw ContractViolation("lsd_histogram: need at least 5 bins");
  if (!(s_max > 0.0)) throw ContractViolation("lsd_histogram: s_max must be > 0");

  const std::vector<double> s = spacings(unfolded.values);
  LsdHistogram hist;
  hist.s_max = s_max;
  hist.counts.assign(static_cast<std::size_t>(n_bins), 0);
  hist.n_samples = s.size();

  const double width = s_max / n_bins;
  std::size_t overflow = 0;
  for (double v : s) {
    const auto bin = static_cast<std::size_t>(v / width);
    if (v >= s_max || bin >= hist.counts.size()) {
      ++overflow;
    } else {
      ++hist.counts[bin];
    }
  }
  hist.densities.resize(hist.counts.size());
  const double norm = 1.0 / (static_cast<double>(hist.n_samples) * width);
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    hist.densities[i] = static_cast<double>(hist.counts[i]) * norm;
  }
  hist.overflow_mass = static_cast<double>(overflow) / static_cast<double>(hist.n_samples);
  return hist;
}

double RatioSeries::mean_chi() const {
  if (chi.empty()) return 0.0;
  return compensated_sum(chi) / static_cast<double>(chi.size());
}

RatioSeries ratio_statistic(std::span<const double> sorted_levels,
                            std::size_t window_size) {
  if (sorted_levels.size() < 3) {
    throw ContractViolation("ratio_statistic: need at least three levels");
  }
  if (window_size < 1) {
    throw ContractViolation("ratio_statistic: window_size must be >= 1");
  }
  const std::vector<double> s = spacings(sorted_levels);

  RatioSeries series;
  series.window_size = window_size;
  series.chi.resize(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) {
    double chi;
    if (s[i] == 0.0 || s[i - 1] == 0.0) {
      chi = 0.0;
      series.zero_spacing_indices.push_back(i - 1);
    } else {
      const double xi = s[i] / s[i - 1];
      chi = std::min(xi, 1.0 / xi);
    }
    series.chi[i - 1] = chi;
  }

  const std::size_t blocks = series.chi.size() / window_size;
  series.windowed_means.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < window_size; ++i) {
      acc.add(series.chi[b * window_size + i]);
    }
    series.windowed_means.push_back(acc.result() / static_cast<double>(window_size));
  }
  return series;
}

std::vector<double> synthetic_poisson_levels(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ContractViolation("synthetic_poisson_levels: need n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<double> levels(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Uniform in [0, 1) from the top 53 bits, then the exact inverse CDF.
    // std::exponential_distribution is avoided: its algorithm is
    // implementation-defined and would break cross-platform reproducibility.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    acc += -std::log1p(-u);
    levels[i] = acc;
  }
  return levels;
}

}  // namespace bsl
