#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "bsl/report_io.hpp"
#include "bsl/sector.hpp"
#include "bsl/symmetry.hpp"
#include "commands.hpp"

namespace bsl::cli {

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> parse_pairs(const std::string& spec) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ContractViolation("symmetry: --pairs expects entries like 2:7");
    }
    pairs.emplace_back(std::stoll(item.substr(0, colon)),
                       std::stoll(item.substr(colon + 1)));
  }
  if (pairs.empty()) throw ContractViolation("symmetry: no momentum pairs given");
  return pairs;
}

}  // namespace

int cmd_symmetry(const RunConfig& config) {
  const ModelParams params = config.make_params();
  const SolverOptions solver = config.make_solver_options();
  const auto pairs = parse_pairs(config.pairs_spec);

  BuildOptions build;
  build.threads = config.resolved_threads();

  // Sectors are certified via the cutoff-doubling protocol and grown until
  // they hold the requested number of certified levels.
  std::map<std::int64_t, SpectrumSector> sectors;
  const auto certified_sector = [&](std::int64_t momentum) -> const SpectrumSector& {
    const auto found = sectors.find(momentum);
    if (found != sectors.end()) return found->second;
    std::int64_t cutoff = config.cutoff;
    for (int round = 0; round < 16; ++round) {
      BuildOptions attempt = build;
      attempt.energy_ceiling.reset();
      auto result = build_certified_sector(params, momentum, cutoff, solver, attempt,
                                           config.match_tol);
      if (result.sector.levels_below(*result.sector.e_max_certified) >=
          config.max_levels) {
        return sectors.emplace(momentum, std::move(result.sector)).first->second;
      }
      cutoff = cutoff + cutoff / 2 + 1;
    }
    throw ContractViolation("symmetry: could not certify enough levels; raise -M");
  };

  std::vector<SymmetryPairResult> results;
  bool all_passed = true;
  for (const auto& [p_a, p_b] : pairs) {
    const auto nu = equivalence_nu(p_a, p_b, config.n_particles);
    if (!nu) {
      throw ContractViolation("symmetry: sectors P=" + std::to_string(p_a) + " and P=" +
                              std::to_string(p_b) + " are not related by a shift");
    }
    const SpectrumSector& a = certified_sector(p_a);
    const SpectrumSector& b = certified_sector(p_b);
    SymmetryPairResult result;
    result.p_a = p_a;
    result.p_b = p_b;
    result.cutoff_a = a.cutoff;
    result.cutoff_b = b.cutoff;
    result.report = verify_sector_equivalence(a, b, *nu, config.max_levels,
                                              config.equivalence_tol);
    all_passed = all_passed && result.report.passed;
    std::printf("symmetry: P=%lld vs P=%lld nu=%lld max|dE|=%.3e %s\n",
                static_cast<long long>(p_a), static_cast<long long>(p_b),
                static_cast<long long>(*nu), result.report.max_deviation,
                result.report.passed ? "ok" : "MISMATCH");
    results.push_back(std::move(result));
  }

  if (!config.output_path.empty()) {
    write_symmetry_report(results, params, config.max_levels, config.output_path);
  }
  return all_passed ? 0 : 3;
}

}  // namespace bsl::cli
