#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bsl/model.hpp"

namespace bsl::cli {

/// One flat bag of options; each subcommand registers the subset it uses.
struct RunConfig {
  // model
  int n_particles = 5;
  std::optional<double> coupling;
  std::optional<double> ratio;  // n/c, mutually exclusive with coupling
  double ring_length = two_pi;
  std::int64_t momentum = 0;
  std::int64_t cutoff = 12;
  std::int64_t cutoff_large = 0;  // saturate; 0 means 2*cutoff

  // solver
  double tolerance = 1e-13;
  int max_iterations = 200;
  int threads = 0;  // 0: hardware concurrency

  // sector build
  std::optional<double> energy_ceiling;
  bool no_ceiling = false;
  bool allow_redundant_momentum = false;
  double match_tol = 1e-10;

  // symmetry
  std::string pairs_spec;
  std::size_t max_levels = 25;
  double equivalence_tol = 1e-9;

  // statistics
  std::string stat = "all";
  std::string window_spec;  // "begin:count"
  std::optional<double> dedup_tol;
  bool allow_uncertified = false;
  int bins = 50;
  double s_max = 4.0;
  int degree = 2;
  bool inverse_unfolding = false;
  std::size_t chi_window = 500;
  std::string w_grid_spec = "0.25:5:20";
  std::size_t n_starts = 1000;
  std::string fit_range_spec = "0:5";
  std::string exponent_range_spec;
  bool synthetic = false;
  std::size_t synthetic_n = 100000;
  std::uint64_t seed = 1;

  // io
  std::string input_path;
  std::string output_path;

  ModelParams make_params() const;
  SolverOptions make_solver_options() const;
  int resolved_threads() const;
};

int cmd_spectrum(const RunConfig& config);
int cmd_saturate(const RunConfig& config);
int cmd_symmetry(const RunConfig& config);
int cmd_stats(const RunConfig& config);

}  // namespace bsl::cli
