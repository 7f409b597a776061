#include <CLI11.hpp>

#include <cstdio>
#include <functional>

#include "bsl/errors.hpp"
#include "commands.hpp"

namespace {

using bsl::cli::RunConfig;

void add_model_options(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("-N,--particles", config.n_particles, "Number of bosons (odd)")
      ->check(CLI::PositiveNumber);
  auto* coupling = cmd->add_option("-c,--coupling", config.coupling,
                                   "Interaction strength c > 0");
  cmd->add_option("--ratio", config.ratio, "Crossover parameter n/c (c = N/(L*ratio))")
      ->excludes(coupling);
  cmd->add_option("-L,--ring-length", config.ring_length, "Ring length (default 2pi)");
  cmd->add_option("--tolerance", config.tolerance,
                  "Newton residual max-norm target (default 1e-13)");
  cmd->add_option("--max-iterations", config.max_iterations, "Newton iteration cap");
  cmd->add_option("-t,--threads", config.threads, "Worker threads (0 = hardware)")
      ->envname("BSL_THREADS");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bsl: exact Lieb-Liniger spectra and their statistics"};
  app.require_subcommand(1);

  RunConfig config;
  std::function<int(const RunConfig&)> action;

  auto* spectrum = app.add_subcommand(
      "spectrum", "Solve every Bethe state of one momentum sector under a cutoff");
  add_model_options(spectrum, config);
  spectrum->add_option("-P,--momentum", config.momentum, "Total momentum sector");
  spectrum->add_option("-M,--cutoff", config.cutoff, "Quantum number cutoff (|m| < M)")
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--emax", config.energy_ceiling,
                       "Retain only levels with E <= emax");
  spectrum->add_flag("--allow-redundant-momentum", config.allow_redundant_momentum,
                     "Build sectors outside the independent set 0..(N-1)/2");
  spectrum->add_option("-o,--output", config.output_path, "Sector file to write")
      ->required();
  spectrum->callback([&] { action = bsl::cli::cmd_spectrum; });

  auto* saturate = app.add_subcommand(
      "saturate", "Certify cutoff completeness by comparing M against a larger cutoff");
  add_model_options(saturate, config);
  saturate->add_option("-P,--momentum", config.momentum, "Total momentum sector");
  saturate->add_option("-M,--cutoff", config.cutoff, "Small cutoff")
      ->check(CLI::PositiveNumber);
  saturate->add_option("--m-large", config.cutoff_large, "Large cutoff (default 2M)");
  saturate->add_option("--emax", config.energy_ceiling,
                       "Comparison ceiling (default: the provable completeness bound)");
  saturate->add_flag("--no-ceiling", config.no_ceiling,
                     "Compare the full truncated spectra (expected to fail)");
  saturate->add_option("--match-tol", config.match_tol,
                       "Energy agreement tolerance for paired levels");
  saturate->add_flag("--allow-redundant-momentum", config.allow_redundant_momentum,
                     "Build sectors outside the independent set 0..(N-1)/2");
  saturate->add_option("-o,--output", config.output_path,
                       "Output prefix: <prefix>.m<M>.dat and <prefix>.saturation.json")
      ->required();
  saturate->callback([&] { action = bsl::cli::cmd_saturate; });

  auto* symmetry = app.add_subcommand(
      "symmetry", "Verify the momentum-shift spectral equivalences between sectors");
  add_model_options(symmetry, config);
  symmetry->add_option("--pairs", config.pairs_spec,
                       "Momentum pairs to compare, e.g. 2:7,1:6,0:5")
      ->required();
  symmetry->add_option("-M,--cutoff", config.cutoff, "Initial cutoff (auto-grown)");
  symmetry->add_option("--levels", config.max_levels, "Certified levels per pair");
  symmetry->add_option("--tol", config.equivalence_tol, "Energy match tolerance");
  symmetry->add_option("--match-tol", config.match_tol, "Saturation match tolerance");
  symmetry->add_option("-o,--output", config.output_path, "JSON report path");
  symmetry->callback([&] { action = bsl::cli::cmd_symmetry; });

  auto* stats = app.add_subcommand(
      "stats", "Level-spacing, spacing-ratio, and Delta3 statistics of a sector file");
  stats->add_option("-i,--input", config.input_path, "Sector file from spectrum/saturate");
  stats->add_flag("--synthetic", config.synthetic,
                  "Analyze a synthetic Poisson sequence instead of a sector file");
  stats->add_option("--synthetic-n", config.synthetic_n, "Synthetic sequence length");
  stats->add_option("--seed", config.seed, "Synthetic generator seed");
  stats->add_option("--stat", config.stat, "lsd | ratio | delta3 | all");
  stats->add_option("--window", config.window_spec,
                    "Level window begin:count (default: the whole certified range)");
  stats->add_option("--dedup", config.dedup_tol,
                    "Remove degenerate energies closer than this before analysis");
  stats->add_flag("--allow-uncertified", config.allow_uncertified,
                  "Permit windows beyond the certified range (report is stamped)");
  stats->add_option("--bins", config.bins, "LSD histogram bins");
  stats->add_option("--smax", config.s_max, "LSD histogram upper edge");
  stats->add_option("--degree", config.degree, "Unfolding polynomial degree");
  stats->add_flag("--inverse", config.inverse_unfolding,
                  "Fit energy as a polynomial of the staircase and invert");
  stats->add_option("--chi-window", config.chi_window,
                    "Averaging block for the ratio statistic");
  stats->add_option("--wgrid", config.w_grid_spec, "Delta3 windows: lo:hi:count or list");
  stats->add_option("--n-starts", config.n_starts, "Delta3 start positions averaged");
  stats->add_option("--fit-range", config.fit_range_spec, "Delta3 slope fit range lo:hi");
  stats->add_option("--exp-range", config.exponent_range_spec,
                    "Delta3 power-law fit range lo:hi");
  stats->add_option("-o,--output", config.output_path, "JSON report path");
  stats->callback([&] { action = bsl::cli::cmd_stats; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;  // 0 covers --help/--version
  }

  try {
    return action(config);
  } catch (const bsl::NonConvergence& err) {
    std::fprintf(stderr, "solver failure: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
