#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsl/delta3.hpp"
#include "bsl/sector.hpp"
#include "bsl/stats.hpp"
#include "bsl/symmetry.hpp"
#include "bsl/unfold.hpp"

namespace bsl {

struct UnfoldingInfo {
  int degree = 0;
  UnfoldConvention convention = UnfoldConvention::direct;
  std::vector<double> coeffs;
  double center = 0.0;
  double halfwidth = 1.0;
  double mean_spacing = 0.0;
};

struct RatioSummary {
  double mean_chi = 0.0;
  std::size_t n_values = 0;
  std::size_t zero_spacings = 0;
  std::size_t window_size = 0;
  std::vector<double> windowed_means;
  std::vector<double> chi;  // raw series; emitted as a table, not as JSON
};

/// Everything one statistics run produced, ready for serialization. Contains
/// no timing and no thread counts: identical configurations must serialize
/// byte-identically.
struct StatsReport {
  std::string source;  // sector path, or "synthetic"
  std::optional<std::uint64_t> seed;

  std::optional<int> n_particles;
  std::optional<double> coupling;
  std::optional<double> ring_length;
  std::optional<double> n_over_c;
  std::optional<std::int64_t> momentum;
  std::optional<std::int64_t> cutoff;
  std::optional<double> e_max_certified;
  bool uncertified = false;  // statistics were forced onto an uncertified range

  std::size_t window_begin = 0;
  std::size_t window_count = 0;
  std::optional<double> dedup_tol;
  std::size_t dedup_removed = 0;

  std::optional<UnfoldingInfo> unfolding;
  std::optional<LsdHistogram> lsd;
  std::optional<RatioSummary> ratio;
  std::optional<Delta3Curve> delta3;
};

/// Writes the JSON report to `json_path` plus plot-ready text tables next to
/// it, one per figure-equivalent statistic:
///   <stem>.lsd.dat     s  density  poisson
///   <stem>.chi.dat     n  chi
///   <stem>.chi_means.dat  n_center  mean_chi
///   <stem>.delta3.dat  W  delta3  poisson
/// Returns the paths written (JSON first).
std::vector<std::string> write_stats_report(const StatsReport& report,
                                            const std::string& json_path);

void write_saturation_report(const SaturationReport& report, const ModelParams& params,
                             std::int64_t momentum, const std::string& path);

struct SymmetryPairResult {
  std::int64_t p_a = 0;
  std::int64_t p_b = 0;
  std::int64_t cutoff_a = 0;
  std::int64_t cutoff_b = 0;
  EquivalenceReport report;
};

void write_symmetry_report(std::span<const SymmetryPairResult> pairs,
                           const ModelParams& params, std::size_t n_levels,
                           const std::string& path);

/// Columns of a whitespace table written by write_stats_report ('#' header
/// carries the column names). Round-trips the 17-digit values exactly.
struct Table {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;
};
Table read_table(const std::string& path);
void write_table(const Table& table, const std::string& path);

}  // namespace bsl
