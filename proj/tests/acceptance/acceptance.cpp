// Acceptance suite: one checkable criterion per function, each printing a
// single PASS/FAIL line. Criteria that exercise the command-line tool spawn
// it as a subprocess and parse its report files; the rest drive the library
// directly. Exit code: number of failed criteria.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bsl/bethe.hpp"
#include "bsl/delta3.hpp"
#include "bsl/sector.hpp"
#include "bsl/stats.hpp"
#include "bsl/symmetry.hpp"
#include "bsl/unfold.hpp"
#include "../oracles.hpp"

namespace {

using namespace bsl;
using nlohmann::json;

struct Context {
  std::string bsl_binary;
  std::filesystem::path workdir;
  int threads = 2;
};

bool g_current_ok = true;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

void expect(bool condition, const std::string& what) {
  if (!condition) {
    g_current_ok = false;
    g_notes.push_back("FAILED: " + what);
  }
}

int run_cli(const Context& ctx, const std::string& args) {
  const std::string command = ctx.bsl_binary + " " + args;
  const int status = std::system(command.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json load_json(const std::filesystem::path& path) {
  return json::parse(slurp(path));
}

SolverOptions solver13() {
  SolverOptions opts;
  opts.tolerance = 1e-13;
  return opts;
}

std::string path_arg(const Context& ctx, const std::string& name) {
  return (ctx.workdir / name).string();
}

// ---------------------------------------------------------------------------
// 1. Solver exactness: every state of the N=5, P=2, M=50 sector has Bethe
//    residual max-norm <= 1e-12 at n/c in {1, 0.1, 0.01}.
bool criterion_1(const Context& ctx) {
  const std::uint64_t expected = testing::count_subsets_dp(-49, 49, 5, 2);
  for (const double ratio : {1.0, 0.1, 0.01}) {
    const ModelParams params = ModelParams::from_density_ratio(5, ratio);
    BuildOptions build;
    build.threads = ctx.threads;
    const SpectrumSector sector = build_sector(params, 2, 50, solver13(), build);
    expect(sector.levels.size() == expected,
           "level count != enumerated count at n/c=" + std::to_string(ratio));
    double worst = 0.0;
    for (const auto& level : sector.levels) {
      const auto residual =
          bethe_residual(level.rapidities, level.quantum_numbers, params);
      for (const double f : residual) worst = std::max(worst, std::abs(f));
    }
    note("n/c=" + std::to_string(ratio) + ": " + std::to_string(sector.levels.size()) +
         " states, recomputed max residual " + format_full(worst));
    expect(worst <= 1e-12, "residual above 1e-12 at n/c=" + std::to_string(ratio));
  }
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 2. Limit laws for m = {-2,-1,0,1,2}: the free-fermion deviation shrinks by
//    a factor in [1.8, 2.2] per coupling doubling at c >= 1e4, and the energy
//    sits within 1e-3 of the free-boson value at c = 1e-4.
bool criterion_2(const Context&) {
  const auto m =
      QuantumNumbers::from_integers(std::vector<std::int64_t>{-2, -1, 0, 1, 2}, 3);

  std::vector<double> deviations;
  for (const double c : {1e4, 2e4, 4e4}) {
    const ModelParams params(5, c);
    const auto state = solve_state(m, params, solver13());
    const auto fermionized =
        limit_rapidities(m, params, CouplingLimit::infinite_coupling);
    double dev = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      dev = std::max(dev, std::abs(state.rapidities[j] - fermionized[j]));
    }
    deviations.push_back(dev);
  }
  for (std::size_t i = 1; i < deviations.size(); ++i) {
    const double factor = deviations[i - 1] / deviations[i];
    note("free-fermion deviation factor per doubling: " + std::to_string(factor));
    expect(factor >= 1.8 && factor <= 2.2, "O(1/c) scaling factor out of [1.8, 2.2]");
  }

  const ModelParams weak(5, 1e-4);
  const auto state = solve_state(m, weak, solver13());
  // The free-boson rapidities for this set vanish, so the reference energy is 0.
  const double energy_deviation = std::abs(state.energy);
  note("free-boson energy deviation at c=1e-4: " + format_full(energy_deviation));
  expect(energy_deviation <= 1e-3, "free-boson energy deviation above 1e-3");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 3. Shift theorem: P in {0,1,2} against P + 5k for k in {1,2} at n/c = 1;
//    first 25 energies agree within 1e-9 after the nu = 2kP + 5k^2 shift.
bool criterion_3(const Context& ctx) {
  const auto report_path = path_arg(ctx, "c3.symmetry.json");
  const int exit_code = run_cli(
      ctx, "symmetry -N 5 --ratio 1 --pairs 0:5,0:10,1:6,1:11,2:7,2:12 --levels 25 "
           "-M 12 --tol 1e-9 -t " + std::to_string(ctx.threads) + " -o " + report_path);
  expect(exit_code == 0, "symmetry command exited with " + std::to_string(exit_code));
  if (exit_code != 0) return g_current_ok;

  const json report = load_json(report_path);
  expect(report.at("all_passed").get<bool>(), "report says not all pairs passed");
  for (const auto& pair : report.at("pairs")) {
    const auto p_a = pair.at("p_a").get<std::int64_t>();
    const auto p_b = pair.at("p_b").get<std::int64_t>();
    const auto k = (p_b - p_a) / 5;
    expect(pair.at("nu").get<std::int64_t>() == 2 * k * p_a + 5 * k * k,
           "nu mismatch for pair");
    expect(pair.at("levels_compared").get<std::size_t>() == 25, "level count");
    expect(pair.at("max_deviation").get<double>() <= 1e-9, "deviation above 1e-9");
  }
  note("6 sector pairs, all shifted spectra identical within 1e-9");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 4. Redundant sectors: P=1 vs P=4 and P=2 vs P=3 agree level-by-level over
//    the first 100 certified levels, for two unrelated couplings.
bool criterion_4(const Context& ctx) {
  for (const ModelParams& params :
       {ModelParams::from_density_ratio(5, 0.37), ModelParams(5, 3.7)}) {
    BuildOptions build;
    build.threads = ctx.threads;
    const auto grown = [&](std::int64_t momentum) {
      std::int64_t cutoff = 14;
      while (true) {
        auto result = build_certified_sector(params, momentum, cutoff, solver13(), build);
        if (result.sector.levels_below(*result.sector.e_max_certified) >= 100) {
          return std::move(result.sector);
        }
        cutoff += cutoff / 2;
      }
    };
    const auto p1 = grown(1);
    const auto p4 = grown(4);
    const auto p2 = grown(2);
    const auto p3 = grown(3);

    const auto check_pair = [&](const SpectrumSector& a, const SpectrumSector& b,
                                std::int64_t p_a, std::int64_t p_b) {
      const auto nu = equivalence_nu(p_a, p_b, 5);
      expect(nu.has_value(), "no equivalence found");
      const auto report = verify_sector_equivalence(a, b, *nu, 100, 1e-9);
      note("c=" + std::to_string(params.coupling()) + " P=" + std::to_string(p_a) +
           " vs P=" + std::to_string(p_b) + ": nu=" + std::to_string(*nu) +
           " max|dE|=" + format_full(report.max_deviation));
      expect(report.passed, "sector pair mismatch");
    };
    check_pair(p1, p4, 1, 4);
    check_pair(p2, p3, 2, 3);
  }
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 5. Saturation protocol: N=5, P=2, n/c=0.01, M=50 certified against M'=100
//    with zero new levels below E_max(50).
bool criterion_5(const Context& ctx) {
  const auto prefix = path_arg(ctx, "c5");
  const int exit_code = run_cli(
      ctx, "saturate -N 5 --ratio 0.01 -P 2 -M 50 --m-large 100 -t " +
               std::to_string(ctx.threads) + " -o " + prefix);
  expect(exit_code == 0, "saturate exited with " + std::to_string(exit_code));
  if (exit_code != 0) return g_current_ok;

  const json report = load_json(prefix + ".saturation.json");
  expect(report.at("certified").get<bool>(), "not certified");
  expect(report.at("new_levels_found").get<std::size_t>() == 0, "new levels found");
  expect(report.at("m_small").get<std::int64_t>() == 50, "m_small");
  expect(report.at("m_large").get<std::int64_t>() == 100, "m_large");
  note("E_max(50)=" + std::to_string(report.at("e_max").get<double>()) + ", " +
       std::to_string(report.at("n_levels_small").get<std::size_t>()) +
       " levels certified, 0 new levels at M'=100");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 6. Poisson calibration on 1e5 synthetic levels: <chi> = 0.386 +- 0.01, the
//    LSD passes a 1% chi^2 test against e^-s over 20 bins, and the Delta3
//    slope over W in [1, 20] is 1/15 +- 10%.
bool criterion_6(const Context&) {
  const auto levels = synthetic_poisson_levels(100000, 1);

  const auto ratio = ratio_statistic(levels, 500);
  note("<chi> = " + std::to_string(ratio.mean_chi()));
  expect(std::abs(ratio.mean_chi() - 0.386) <= 0.01, "<chi> outside 0.386 +- 0.01");

  const auto unfolded = unfold(levels, 2);
  const auto hist = lsd_histogram(unfolded, 20, 4.0);
  double chi2 = 0.0;
  const double n = static_cast<double>(hist.n_samples);
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double a = static_cast<double>(i) * hist.bin_width();
    const double b = a + hist.bin_width();
    const double expected = n * (std::exp(-a) - std::exp(-b));
    const double diff = static_cast<double>(hist.counts[i]) - expected;
    chi2 += diff * diff / expected;
  }
  // 99th percentile of chi^2 with 20 degrees of freedom.
  note("LSD chi^2 = " + std::to_string(chi2) + " (1% critical value 37.566)");
  expect(chi2 < 37.566, "LSD fails the 1% chi^2 test against e^-s");

  std::vector<double> grid;
  for (int w = 1; w <= 20; ++w) grid.push_back(static_cast<double>(w));
  const auto curve = delta3_curve(unfolded, grid, 10000);
  const auto fit = fit_slope(curve, 1.0, 20.0);
  note("Delta3 slope = " + std::to_string(fit.slope) + " (1/15 = 0.066667)");
  expect(std::abs(fit.slope - 1.0 / 15.0) <= 0.1 / 15.0, "Delta3 slope off by >10%");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 7. Closed-form Delta3 equals brute-force quadrature plus direct two-
//    parameter minimization to 1e-9 on 100 randomized windows.
bool criterion_7(const Context&) {
  const auto levels = synthetic_poisson_levels(4000, 77);
  UnfoldedSequence u;
  u.values = levels;
  u.source_end = levels.size();

  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> start(levels.front(), levels.back() - 80.0);
  std::uniform_real_distribution<double> width(0.5, 70.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double xs = start(rng);
    const double w = width(rng);
    const double closed = delta3_closed_form(u, xs, w);
    const double oracle = testing::delta3_quadrature_oracle(levels, xs, w);
    worst = std::max(worst, std::abs(closed - oracle));
  }
  note("max |closed - oracle| over 100 windows: " + format_full(worst));
  expect(worst <= 1e-9, "closed form departs from the quadrature oracle");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 8. Short-range physics at desk scale (N=5, P=2): Poissonian <chi> and
//    Delta3 slope at n/c = 0.1; a clustering peak doubling the Poisson LSD
//    origin density at n/c = 1 and n/c = 0.01.
bool criterion_8(const Context& ctx) {
  const std::string threads = std::to_string(ctx.threads);

  // n/c = 0.1: mid-spectrum ratio statistic and Delta3 slope.
  const auto a_prefix = path_arg(ctx, "c8a");
  expect(run_cli(ctx, "saturate -N 5 --ratio 0.1 -P 2 -M 32 -t " + threads + " -o " +
                          a_prefix) == 0,
         "saturate n/c=0.1 failed");
  const std::string a_sector = a_prefix + ".m32.dat";
  const auto a_chi = path_arg(ctx, "c8a.chi.json");
  expect(run_cli(ctx, "stats -i " + a_sector +
                          " --stat ratio --window 3000:10000 -o " + a_chi) == 0,
         "ratio stats failed");
  const double mean_chi = load_json(a_chi).at("ratio").at("mean_chi").get<double>();
  note("n/c=0.1 mid-spectrum <chi> = " + std::to_string(mean_chi));
  expect(std::abs(mean_chi - 0.386) <= 0.03, "<chi> outside 0.386 +- 0.03");

  const auto a_d3 = path_arg(ctx, "c8a.delta3.json");
  expect(run_cli(ctx, "stats -i " + a_sector +
                          " --stat delta3 --window 3000:10000 --wgrid 0.25:5:20 "
                          "--n-starts 2000 --fit-range 0:5 -o " + a_d3) == 0,
         "delta3 stats failed");
  const double gamma0 =
      load_json(a_d3).at("delta3").at("fit").at("gamma0").get<double>();
  note("n/c=0.1 Delta3 slope over [0,5] = " + std::to_string(gamma0));
  expect(gamma0 >= 0.05 && gamma0 <= 0.09, "Delta3 slope outside [0.05, 0.09]");

  // n/c = 1 and n/c = 0.01: LSD clustering peak at the origin.
  const auto peak = [&](const std::string& tag, const std::string& ratio,
                        std::int64_t cutoff, const std::string& window) {
    const auto prefix = path_arg(ctx, tag);
    expect(run_cli(ctx, "saturate -N 5 --ratio " + ratio + " -P 2 -M " +
                            std::to_string(cutoff) + " -t " + threads + " -o " +
                            prefix) == 0,
           "saturate n/c=" + ratio + " failed");
    const auto lsd = path_arg(ctx, tag + ".lsd.json");
    expect(run_cli(ctx, "stats -i " + prefix + ".m" + std::to_string(cutoff) +
                            ".dat --stat lsd --bins 40 --smax 4 --window " + window +
                            " -o " + lsd) == 0,
           "lsd stats n/c=" + ratio + " failed");
    const json report = load_json(lsd);
    const double first_bin = report.at("lsd").at("densities").at(0).get<double>();
    const double poisson = (1.0 - std::exp(-0.1)) / 0.1;  // bin average of e^-s
    note("n/c=" + ratio + " first-bin density " + std::to_string(first_bin) +
         " vs Poisson " + std::to_string(poisson));
    expect(first_bin >= 2.0 * poisson,
           "no factor-2 clustering peak at n/c=" + ratio);
  };
  peak("c8b", "1", 30, "0:10000");
  peak("c8c", "0.01", 32, "200:10000");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 9. Large-W rigidity at n/c = 0.02 (extended): over a certified mid-spectrum
//    window of >= 1e4 levels, Delta3 stays within 15% of W/15 for W <= 100
//    and grows with a fitted exponent alpha > 1 on W in [200, 1000].
//
//    Window choice: the overlapping-window estimator biases alpha downward
//    when W_max is a sizable fraction of the analyzed span (a pure Poisson
//    sequence measures alpha ~ 0.74 over a bare 1e4-level span), so the
//    analysis uses 4e4 levels starting at index 2e6, deep enough in the
//    spectrum that the Poisson range extends past W = 100. The Poisson
//    baseline under the identical estimator is printed alongside.
bool criterion_9(const Context& ctx) {
  const std::size_t begin = 2000000;
  const std::size_t count = 40000;
  const std::size_t starts = 10000;

  const ModelParams params = ModelParams::from_density_ratio(5, 0.02);
  BuildOptions build;
  build.threads = ctx.threads;
  const auto result = build_certified_sector(params, 2, 107, solver13(), build);
  const auto& sector = result.sector;
  const std::size_t certified = sector.levels_below(*sector.e_max_certified);
  note("certified levels at M=107: " + std::to_string(certified));
  expect(certified >= begin + count, "not enough certified levels for the window");
  if (!g_current_ok) return false;

  std::vector<double> energies;
  energies.reserve(count);
  for (std::size_t i = begin; i < begin + count; ++i) {
    energies.push_back(sector.levels[i].energy);
  }
  const auto unfolded = unfold(energies, 2);

  std::vector<double> small_grid;
  for (int w = 10; w <= 100; w += 10) small_grid.push_back(static_cast<double>(w));
  const auto small = delta3_curve(unfolded, small_grid, starts);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < small.values.size(); ++i) {
    const double reference = small.window_lengths[i] / 15.0;
    worst_rel = std::max(worst_rel,
                         std::abs(small.values[i] - reference) / reference);
  }
  note("max relative deviation from W/15 for W <= 100: " + std::to_string(worst_rel));
  expect(worst_rel <= 0.15, "Delta3 departs from W/15 by more than 15% at W <= 100");

  const std::vector<double> large_grid{200.0, 300.0, 450.0, 700.0, 1000.0};
  const auto large = delta3_curve(unfolded, large_grid, starts);
  const auto exponent = fit_exponent(large, 200.0, 1000.0);

  UnfoldedSequence poisson;
  poisson.values = synthetic_poisson_levels(count, 5);
  poisson.source_end = count;
  const auto baseline =
      fit_exponent(delta3_curve(poisson, large_grid, starts), 200.0, 1000.0);

  note("fitted alpha on W in [200, 1000]: " + std::to_string(exponent.alpha) +
       " (Poisson baseline under the same estimator: " +
       std::to_string(baseline.alpha) + ")");
  expect(exponent.alpha > 1.0, "alpha <= 1: no super-Poissonian rigidity growth");
  return g_current_ok;
}

// ---------------------------------------------------------------------------
// 10. Determinism: the criterion-3 and criterion-8 command pipelines produce
//     byte-identical report files for different thread counts.
bool criterion_10(const Context& ctx) {
  const auto compare = [&](const std::filesystem::path& a,
                           const std::filesystem::path& b, const std::string& what) {
    const std::string lhs = slurp(a);
    const std::string rhs = slurp(b);
    expect(!lhs.empty() && lhs == rhs, what + " differ between thread counts");
  };

  for (const int threads : {1, 2}) {
    const std::string tag = "c10.t" + std::to_string(threads);
    expect(run_cli(ctx, "symmetry -N 5 --ratio 1 --pairs 0:5,1:6,2:7 --levels 25 "
                        "-M 12 --tol 1e-9 -t " + std::to_string(threads) + " -o " +
                        path_arg(ctx, tag + ".sym.json")) == 0,
           "symmetry run failed");
    expect(run_cli(ctx, "saturate -N 5 --ratio 0.1 -P 2 -M 24 -t " +
                        std::to_string(threads) + " -o " + path_arg(ctx, tag)) == 0,
           "saturate run failed");
    // Stats must see an identical input path, or the echoed source field
    // would differ for a reason other than threading.
    std::filesystem::copy_file(path_arg(ctx, tag + ".m24.dat"),
                               path_arg(ctx, "c10.sector.dat"),
                               std::filesystem::copy_options::overwrite_existing);
    expect(run_cli(ctx, "stats -i " + path_arg(ctx, "c10.sector.dat") +
                        " --stat all --window 500:4000 --wgrid 0.25:5:20 "
                        "--n-starts 1500 --fit-range 0:5 -o " +
                        path_arg(ctx, tag + ".stats.json")) == 0,
           "stats run failed");
  }
  compare(path_arg(ctx, "c10.t1.sym.json"), path_arg(ctx, "c10.t2.sym.json"),
          "symmetry reports");
  compare(path_arg(ctx, "c10.t1.m24.dat"), path_arg(ctx, "c10.t2.m24.dat"),
          "sector files");
  compare(path_arg(ctx, "c10.t1.m48.dat"), path_arg(ctx, "c10.t2.m48.dat"),
          "large sector files");
  compare(path_arg(ctx, "c10.t1.stats.json"), path_arg(ctx, "c10.t2.stats.json"),
          "stats reports");
  compare(path_arg(ctx, "c10.t1.stats.delta3.dat"),
          path_arg(ctx, "c10.t2.stats.delta3.dat"), "delta3 tables");
  compare(path_arg(ctx, "c10.t1.stats.lsd.dat"), path_arg(ctx, "c10.t2.stats.lsd.dat"),
          "lsd tables");
  note("symmetry, sector, and statistics outputs are byte-identical for 1 vs 2 threads");
  return g_current_ok;
}

const char* kDescriptions[] = {
    "solver exactness: M=50 sector residuals <= 1e-12 at three couplings",
    "limit laws: O(1/c) fermionization and the free-boson energy at c=1e-4",
    "shift theorem: P vs P+5k spectra identical after the nu shift",
    "redundant sectors: P=1~P=4 and P=2~P=3 for two couplings",
    "saturation: M=50 certified against M'=100 at n/c=0.01",
    "Poisson calibration: <chi>, chi^2 LSD test, Delta3 slope 1/15",
    "Delta3 closed form vs quadrature oracle on 100 windows",
    "short-range physics: <chi>, slope in [0.05,0.09], clustering peaks",
    "large-W rigidity: W/15 within 15% up to W=100, then alpha > 1 (extended)",
    "determinism: byte-identical reports across thread counts",
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bsl acceptance criteria"};
  Context ctx;
  int criterion = 0;
  app.add_option("--criterion", criterion, "Criterion number 1..10 (0 = all)");
  app.add_option("--bsl", ctx.bsl_binary, "Path to the bsl command-line tool");
  std::string workdir = "acceptance-artifacts";
  app.add_option("--workdir", workdir, "Scratch directory for artifacts");
  app.add_option("--threads", ctx.threads, "Worker threads for sector builds");
  CLI11_PARSE(app, argc, argv);

  ctx.workdir = workdir;
  std::filesystem::create_directories(ctx.workdir);

  using CriterionFn = bool (*)(const Context&);
  const CriterionFn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                                  criterion_5, criterion_6, criterion_7, criterion_8,
                                  criterion_9, criterion_10};

  int failures = 0;
  for (int k = 1; k <= 10; ++k) {
    if (criterion != 0 && criterion != k) continue;
    g_current_ok = true;
    g_notes.clear();
    bool ok = false;
    try {
      ok = criteria[k - 1](ctx);
    } catch (const std::exception& err) {
      g_notes.push_back(std::string("exception: ") + err.what());
      ok = false;
    }
    for (const auto& line : g_notes) std::printf("    %s\n", line.c_str());
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", k, kDescriptions[k - 1]);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
