#include "bsl/sector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "bsl/bethe.hpp"
#include "bsl/enumerate.hpp"

namespace bsl {

namespace {

bool level_order(const SectorLevel& a, const SectorLevel& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  return lex_less(a.quantum_numbers, b.quantum_numbers);
}

/// Solves one chunk of quantum-number sets across the worker threads.
/// Results land in per-index slots, so the outcome is independent of
/// scheduling; the first failure (by lowest index) is rethrown.
void solve_chunk(const std::vector<QuantumNumbers>& chunk, const ModelParams& params,
                 const SolverOptions& opts, int threads,
                 std::vector<std::optional<SectorLevel>>& out) {
  out.assign(chunk.size(), std::nullopt);
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> first_failure{chunk.size()};
  std::vector<std::exception_ptr> failures(chunk.size());

  const auto worker = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= chunk.size()) return;
      try {
        BetheState state = solve_state(chunk[i], params, opts);
        out[i] = SectorLevel{state.quantum_numbers, std::move(state.rapidities),
                             state.energy, state.residual_norm};
      } catch (...) {
        failures[i] = std::current_exception();
        std::size_t expected = first_failure.load();
        while (i < expected && !first_failure.compare_exchange_weak(expected, i)) {
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const std::size_t bad = first_failure.load();
  if (bad < chunk.size()) std::rethrow_exception(failures[bad]);
}

}  // namespace

std::size_t SpectrumSector::levels_below(double energy) const {
  const auto it = std::upper_bound(
      levels.begin(), levels.end(), energy,
      [](double e, const SectorLevel& l) { return e < l.energy; });
  return static_cast<std::size_t>(it - levels.begin());
}

double completeness_energy_bound(const ModelParams& params, std::int64_t cutoff) {
  const double scale = two_pi / params.ring_length();
  const double margin = 0.5 * static_cast<double>(params.n_particles() - 1);
  const double edge = scale * (static_cast<double>(cutoff) - margin);
  if (edge <= 0.0) return 0.0;
  return edge * edge;
}

std::int64_t max_abs_quantum_number_for_energy(const ModelParams& params,
                                               double ceiling) {
  if (ceiling <= 0.0) return 0;
  const double scale = two_pi / params.ring_length();
  const double margin = 0.5 * static_cast<double>(params.n_particles() - 1);
  // |lambda| >= scale * (|m| - margin), so E <= ceiling forces
  // |m| <= sqrt(ceiling)/scale + margin. One extra unit guards rounding.
  return static_cast<std::int64_t>(std::floor(std::sqrt(ceiling) / scale + margin)) + 1;
}

SpectrumSector build_sector(const ModelParams& params, std::int64_t momentum,
                            std::int64_t cutoff, const SolverOptions& solver_opts,
                            const BuildOptions& build_opts) {
  solver_opts.validate();
  if (params.n_particles() % 2 == 0) {
    throw ContractViolation("build_sector: requires odd N");
  }
  if (params.ring_length() != two_pi) {
    throw ContractViolation("build_sector: requires L = 2pi for integer momenta");
  }
  if (build_opts.threads < 1 || build_opts.chunk_size < 1) {
    throw ContractViolation("build_sector: invalid build options");
  }

  std::optional<std::int64_t> value_bound;
  if (build_opts.energy_ceiling && build_opts.prune_with_ceiling) {
    value_bound = max_abs_quantum_number_for_energy(params, *build_opts.energy_ceiling);
  }

  SpectrumSector sector{params, momentum, cutoff, solver_opts.tolerance,
                        {},     {},       build_opts.energy_ceiling};

  QuantumSetEnumerator stream(params.n_particles(), cutoff, momentum, value_bound);
  std::vector<QuantumNumbers> chunk;
  chunk.reserve(build_opts.chunk_size);
  std::vector<std::optional<SectorLevel>> solved;

  QuantumNumbers m({0}, 1);
  bool more = true;
  while (more) {
    chunk.clear();
    while (chunk.size() < build_opts.chunk_size && (more = stream.next(m))) {
      chunk.push_back(m);
    }
    if (chunk.empty()) break;
    solve_chunk(chunk, params, solver_opts, build_opts.threads, solved);
    for (auto& slot : solved) {
      if (build_opts.energy_ceiling && slot->energy > *build_opts.energy_ceiling) {
        continue;
      }
      sector.levels.push_back(std::move(*slot));
    }
  }

  std::sort(sector.levels.begin(), sector.levels.end(), level_order);
  return sector;
}

SaturationReport verify_saturation(const SpectrumSector& small,
                                   const SpectrumSector& large, double match_tol) {
  if (!(match_tol > 0.0)) {
    throw ContractViolation("verify_saturation: match_tol must be > 0");
  }
  if (!(small.params == large.params)) {
    throw ContractViolation("verify_saturation: sectors differ in model parameters");
  }
  if (small.momentum != large.momentum) {
    throw ContractViolation("verify_saturation: sectors differ in momentum");
  }

  SaturationReport report;
  report.m_small = small.cutoff;
  report.m_large = large.cutoff;
  report.match_tol = match_tol;
  report.n_levels_small = small.levels.size();
  report.e_max = small.levels.empty() ? 0.0 : small.levels.back().energy;

  std::map<std::vector<std::int64_t>, double> small_index;
  for (const auto& level : small.levels) {
    small_index.emplace(level.quantum_numbers.twice_values(), level.energy);
  }

  for (const auto& level : large.levels) {
    if (level.energy > report.e_max + match_tol) break;  // levels are sorted
    ++report.n_levels_large_below_emax;
    const auto it = small_index.find(level.quantum_numbers.twice_values());
    bool is_new = it == small_index.end();
    if (!is_new) {
      const double mismatch = std::abs(it->second - level.energy);
      report.max_paired_mismatch = std::max(report.max_paired_mismatch, mismatch);
      is_new = mismatch > match_tol;
    }
    if (is_new) {
      ++report.new_levels_found;
      if (report.new_level_examples.size() < 16) {
        report.new_level_examples.push_back(level.quantum_numbers);
      }
    }
  }
  report.certified = report.new_levels_found == 0;
  return report;
}

void apply_certification(SpectrumSector& sector, const SaturationReport& report) {
  if (!report.certified) {
    throw ContractViolation("apply_certification: report is not certified");
  }
  sector.e_max_certified = report.e_max;
}

CertifiedBuild build_certified_sector(const ModelParams& params, std::int64_t momentum,
                                      std::int64_t cutoff,
                                      const SolverOptions& solver_opts,
                                      BuildOptions build_opts, double match_tol) {
  const double bound = completeness_energy_bound(params, cutoff);
  build_opts.energy_ceiling =
      build_opts.energy_ceiling ? std::min(*build_opts.energy_ceiling, bound) : bound;
  CertifiedBuild out{build_sector(params, momentum, cutoff, solver_opts, build_opts),
                     {}};
  const SpectrumSector large =
      build_sector(params, momentum, 2 * cutoff, solver_opts, build_opts);
  out.report = verify_saturation(out.sector, large, match_tol);
  if (!out.report.certified) {
    throw IntegrityError(
        "build_certified_sector: doubling the cutoff exposed new levels below the "
        "retention ceiling; this contradicts the rapidity bound");
  }
  apply_certification(out.sector, out.report);
  return out;
}

std::pair<std::vector<double>, std::size_t> deduplicate_energies(
    const std::vector<double>& sorted_energies, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("deduplicate_energies: tol must be > 0");
  std::vector<double> kept;
  kept.reserve(sorted_energies.size());
  std::size_t removed = 0;
  bool have_prev = false;
  double prev = 0.0;
  for (double e : sorted_energies) {
    if (have_prev && e - prev < tol) {
      ++removed;  // same run: the chain of consecutive gaps stays below tol
    } else {
      kept.push_back(e);
    }
    prev = e;
    have_prev = true;
  }
  return {std::move(kept), removed};
}

std::size_t deduplicate_levels(SpectrumSector& sector, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("deduplicate_levels: tol must be > 0");
  std::vector<SectorLevel> kept;
  kept.reserve(sector.levels.size());
  bool have_prev = false;
  double prev = 0.0;
  for (auto& level : sector.levels) {
    const double e = level.energy;
    if (!(have_prev && e - prev < tol)) kept.push_back(std::move(level));
    prev = e;
    have_prev = true;
  }
  const std::size_t removed = sector.levels.size() - kept.size();
  sector.levels = std::move(kept);
  return removed;
}

}  // namespace bsl
