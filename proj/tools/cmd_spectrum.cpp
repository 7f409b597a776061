#include <algorithm>
#include <chrono>
#include <cstdio>

#include "bsl/sector.hpp"
#include "bsl/sector_io.hpp"
#include "bsl/symmetry.hpp"
#include "commands.hpp"

namespace bsl::cli {

namespace {

void check_momentum_independence(const RunConfig& config) {
  if (config.allow_redundant_momentum) return;
  const auto independent = independent_momenta(config.n_particles);
  if (std::find(independent.begin(), independent.end(), config.momentum) ==
      independent.end()) {
    throw ContractViolation(
        "momentum " + std::to_string(config.momentum) +
        " is a shifted copy of an independent sector (0.." +
        std::to_string((config.n_particles - 1) / 2) +
        "); pass --allow-redundant-momentum to build it anyway");
  }
}

}  // namespace

int cmd_spectrum(const RunConfig& config) {
  check_momentum_independence(config);
  const ModelParams params = config.make_params();

  BuildOptions build;
  build.threads = config.resolved_threads();
  if (config.energy_ceiling) build.energy_ceiling = *config.energy_ceiling;

  const auto start = std::chrono::steady_clock::now();
  const SpectrumSector sector =
      build_sector(params, config.momentum, config.cutoff,
                   config.make_solver_options(), build);
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

  write_sector(sector, config.output_path);
  const double e_max = sector.levels.empty() ? 0.0 : sector.levels.back().energy;
  std::printf("spectrum: N=%d P=%lld M=%lld levels=%zu e_max=%.6g wall=%.2fs -> %s\n",
              params.n_particles(), static_cast<long long>(config.momentum),
              static_cast<long long>(config.cutoff), sector.levels.size(), e_max,
              wall.count(), config.output_path.c_str());
  return 0;
}

}  // namespace bsl::cli
