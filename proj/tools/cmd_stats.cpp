#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "bsl/delta3.hpp"
#include "bsl/report_io.hpp"
#include "bsl/sector.hpp"
#include "bsl/sector_io.hpp"
#include "bsl/stats.hpp"
#include "bsl/unfold.hpp"
#include "commands.hpp"

namespace bsl::cli {

namespace {

std::vector<double> parse_grid(const std::string& spec) {
  // Either "lo:hi:count" (linear) or an explicit comma list.
  if (spec.find(',') != std::string::npos) {
    std::vector<double> grid;
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) grid.push_back(std::stod(item));
    return grid;
  }
  std::istringstream is(spec);
  std::string lo_s, hi_s, count_s;
  if (!std::getline(is, lo_s, ':') || !std::getline(is, hi_s, ':') ||
      !std::getline(is, count_s, ':')) {
    throw ContractViolation("stats: --wgrid expects lo:hi:count or a comma list");
  }
  const double lo = std::stod(lo_s);
  const double hi = std::stod(hi_s);
  const int count = std::stoi(count_s);
  if (count < 2 || !(hi > lo)) throw ContractViolation("stats: bad --wgrid range");
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  }
  if (grid.front() <= 0.0) grid.front() = (grid[1] > 0.02) ? 0.01 : grid[1] / 2.0;
  return grid;
}

std::pair<double, double> parse_range(const std::string& spec, const char* flag) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ContractViolation(std::string("stats: ") + flag + " expects lo:hi");
  }
  return {std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))};
}

bool wants(const std::string& stat, const char* name) {
  return stat == "all" || stat == name;
}

}  // namespace

int cmd_stats(const RunConfig& config) {
  if (config.stat != "all" && config.stat != "lsd" && config.stat != "ratio" &&
      config.stat != "delta3") {
    throw ContractViolation("stats: --stat must be lsd, ratio, delta3, or all");
  }

  StatsReport report;
  std::vector<double> energies;

  if (config.synthetic) {
    report.source = "synthetic";
    report.seed = config.seed;
    energies = synthetic_poisson_levels(config.synthetic_n, config.seed);
  } else {
    if (config.input_path.empty()) {
      throw ContractViolation("stats: need -i <sector file> or --synthetic");
    }
    SpectrumSector sector = read_sector(config.input_path);
    report.source = config.input_path;
    report.n_particles = sector.params.n_particles();
    report.coupling = sector.params.coupling();
    report.ring_length = sector.params.ring_length();
    report.n_over_c = sector.params.density_ratio();
    report.momentum = sector.momentum;
    report.cutoff = sector.cutoff;
    report.e_max_certified = sector.e_max_certified;

    energies.reserve(sector.levels.size());
    for (const auto& level : sector.levels) energies.push_back(level.energy);
    if (config.dedup_tol) {
      auto [kept, removed] = deduplicate_energies(energies, *config.dedup_tol);
      energies = std::move(kept);
      report.dedup_tol = config.dedup_tol;
      report.dedup_removed = removed;
    }
  }

  // The analysis window, bounded by the certified range unless overridden.
  std::size_t certified_count = energies.size();
  if (!config.synthetic) {
    if (report.e_max_certified) {
      certified_count = static_cast<std::size_t>(
          std::upper_bound(energies.begin(), energies.end(), *report.e_max_certified) -
          energies.begin());
    } else {
      certified_count = 0;
    }
  }
  std::size_t begin = 0;
  std::size_t count = certified_count;
  if (!config.window_spec.empty()) {
    const auto [b, c] = parse_range(config.window_spec, "--window");
    begin = static_cast<std::size_t>(b);
    count = static_cast<std::size_t>(c);
  }
  if (begin + count > energies.size()) {
    throw ContractViolation("stats: window exceeds the available levels");
  }
  if (begin + count > certified_count) {
    if (!config.allow_uncertified) {
      throw ContractViolation(
          "stats: window exceeds the certified range (" +
          std::to_string(certified_count) +
          " levels); rerun saturate with a larger cutoff or pass --allow-uncertified");
    }
    report.uncertified = true;
  }
  if (count < 3) throw ContractViolation("stats: window too small");
  report.window_begin = begin;
  report.window_count = count;
  const std::span<const double> window(energies.data() + begin, count);

  const bool need_unfold = wants(config.stat, "lsd") || wants(config.stat, "delta3");
  std::optional<UnfoldedSequence> unfolded;
  if (need_unfold) {
    unfolded = unfold(window, config.degree,
                      config.inverse_unfolding ? UnfoldConvention::inverse
                                               : UnfoldConvention::direct,
                      begin);
    report.unfolding = UnfoldingInfo{
        config.degree,
        config.inverse_unfolding ? UnfoldConvention::inverse : UnfoldConvention::direct,
        unfolded->smooth_coeffs,
        unfolded->center,
        unfolded->halfwidth,
        unfolded->mean_spacing(),
    };
  }

  if (wants(config.stat, "lsd")) {
    report.lsd = lsd_histogram(*unfolded, config.bins, config.s_max);
    std::printf("stats: lsd bins=%d s_max=%g samples=%zu overflow=%.4f\n", config.bins,
                config.s_max, report.lsd->n_samples, report.lsd->overflow_mass);
  }
  if (wants(config.stat, "ratio")) {
    const RatioSeries series = ratio_statistic(window, config.chi_window);
    report.ratio = RatioSummary{series.mean_chi(),
                                series.chi.size(),
                                series.zero_spacing_indices.size(),
                                series.window_size,
                                series.windowed_means,
                                series.chi};
    std::printf("stats: ratio mean_chi=%.4f over %zu values (%zu zero spacings)\n",
                report.ratio->mean_chi, report.ratio->n_values,
                report.ratio->zero_spacings);
  }
  if (wants(config.stat, "delta3")) {
    const auto grid = parse_grid(config.w_grid_spec);
    Delta3Curve curve = delta3_curve(*unfolded, grid, config.n_starts);
    const auto [fit_lo, fit_hi] = parse_range(config.fit_range_spec, "--fit-range");
    curve.fit = fit_slope(curve, fit_lo, fit_hi);
    if (!config.exponent_range_spec.empty()) {
      const auto [exp_lo, exp_hi] = parse_range(config.exponent_range_spec, "--exp-range");
      curve.exponent = fit_exponent(curve, exp_lo, exp_hi);
    }
    std::printf("stats: delta3 gamma0=%.5f gamma1=%.5f over W in [%g, %g]%s\n",
                curve.fit->slope, curve.fit->intercept, fit_lo, fit_hi,
                report.uncertified ? " UNCERTIFIED" : "");
    if (curve.exponent) {
      std::printf("stats: delta3 exponent alpha=%.4f over W in [%g, %g]\n",
                  curve.exponent->alpha, curve.exponent->w_min, curve.exponent->w_max);
    }
    report.delta3 = std::move(curve);
  }

  if (!config.output_path.empty()) {
    const auto written = write_stats_report(report, config.output_path);
    std::printf("stats: wrote %zu files under %s\n", written.size(),
                config.output_path.c_str());
  }
  return 0;
}

}  // namespace bsl::cli
