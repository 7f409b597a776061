#include "commands.hpp"

#include <thread>

namespace bsl::cli {

ModelParams RunConfig::make_params() const {
  if (coupling.has_value() == ratio.has_value()) {
    throw ContractViolation("exactly one of --coupling and --ratio must be given");
  }
  if (coupling) return ModelParams(n_particles, *coupling, ring_length);
  return ModelParams::from_density_ratio(n_particles, *ratio, ring_length);
}

SolverOptions RunConfig::make_solver_options() const {
  SolverOptions opts;
  opts.tolerance = tolerance;
  opts.max_iterations = max_iterations;
  opts.validate();
  return opts;
}

int RunConfig::resolved_threads() const {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace bsl::cli
