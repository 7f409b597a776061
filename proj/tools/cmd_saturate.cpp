#include <cstdio>
#include <string>

#include "bsl/report_io.hpp"
#include "bsl/sector.hpp"
#include "bsl/sector_io.hpp"
#include "commands.hpp"

namespace bsl::cli {

int cmd_saturate(const RunConfig& config) {
  const ModelParams params = config.make_params();
  const std::int64_t m_small = config.cutoff;
  const std::int64_t m_large =
      config.cutoff_large > 0 ? config.cutoff_large : 2 * m_small;
  if (m_large <= m_small) {
    throw ContractViolation("saturate: the second cutoff must exceed the first");
  }

  BuildOptions build;
  build.threads = config.resolved_threads();
  if (!config.no_ceiling) {
    // Compare over the range where the small cutoff can be complete at all;
    // the truncation bell above it would always disagree.
    build.energy_ceiling = config.energy_ceiling
                               ? *config.energy_ceiling
                               : completeness_energy_bound(params, m_small);
  }

  const SolverOptions solver = config.make_solver_options();
  SpectrumSector small = build_sector(params, config.momentum, m_small, solver, build);
  const SpectrumSector large =
      build_sector(params, config.momentum, m_large, solver, build);
  const SaturationReport report = verify_saturation(small, large, config.match_tol);
  if (report.certified) apply_certification(small, report);

  const std::string prefix = config.output_path;
  const std::string small_path = prefix + ".m" + std::to_string(m_small) + ".dat";
  const std::string large_path = prefix + ".m" + std::to_string(m_large) + ".dat";
  const std::string report_path = prefix + ".saturation.json";
  write_sector(small, small_path);
  write_sector(large, large_path);
  write_saturation_report(report, params, config.momentum, report_path);

  std::printf(
      "saturate: M=%lld vs M'=%lld e_max=%.6g levels=%zu/%zu new=%zu certified=%s\n",
      static_cast<long long>(m_small), static_cast<long long>(m_large), report.e_max,
      report.n_levels_small, report.n_levels_large_below_emax, report.new_levels_found,
      report.certified ? "yes" : "no");
  if (!report.certified) {
    for (const auto& m : report.new_level_examples) {
      std::string values;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) values += ",";
        values += std::to_string(m.twice(i) / 2);
      }
      std::printf("  new level below e_max: {%s}\n", values.c_str());
    }
    return 3;
  }
  return 0;
}

}  // namespace bsl::cli
