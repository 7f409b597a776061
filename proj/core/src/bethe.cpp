#include "bsl/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bsl {

namespace {

void check_dimensions(std::size_t n_rap, std::size_t n_m) {
  if (n_rap != n_m) {
    throw ContractViolation("bethe: rapidity count does not match quantum numbers");
  }
}

std::string describe(const QuantumNumbers& m) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    const auto t = m.twice(i);
    if (t % 2 == 0) os << t / 2;
    else os << t << "/2";
  }
  os << "}";
  return os.str();
}

struct NewtonOutcome {
  std::vector<double> rapidities;
  double residual_norm;
  int iterations;
  bool converged;
};

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

NewtonOutcome newton_solve(const QuantumNumbers& m, const ModelParams& params,
                           const SolverOptions& opts, std::vector<double> lambda) {
  const std::size_t n = m.size();
  std::vector<double> f = bethe_residual(lambda, m, params);
  double fnorm = max_norm(f);

  std::vector<double> best = lambda;
  double best_norm = fnorm;

  double alpha = opts.damping;
  int streak = 0;

  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd rhs(n);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (fnorm <= opts.tolerance) {
      return {std::move(lambda), fnorm, iter, true};
    }
    const SquareMatrix j = bethe_jacobian(lambda, params);
    for (std::size_t i = 0; i < n; ++i) {
      rhs(static_cast<Eigen::Index>(i)) = f[i];
      for (std::size_t k = 0; k < n; ++k) {
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j(i, k);
      }
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(rhs);

    std::vector<double> trial(n);
    for (std::size_t i = 0; i < n; ++i) {
      trial[i] = lambda[i] - alpha * step(static_cast<Eigen::Index>(i));
    }
    std::vector<double> ft = bethe_residual(trial, m, params);
    const double ftnorm = max_norm(ft);

    if (ftnorm > fnorm) {
      alpha *= 0.5;
      streak = 0;
      if (alpha < 1e-12) break;  // stagnated: the step direction stopped helping
      continue;
    }
    lambda = std::move(trial);
    f = std::move(ft);
    fnorm = ftnorm;
    if (fnorm < best_norm) {
      best = lambda;
      best_norm = fnorm;
    }
    if (++streak >= 2) alpha = opts.damping;
  }
  if (fnorm <= opts.tolerance) {
    return {std::move(lambda), fnorm, opts.max_iterations, true};
  }
  return {std::move(best), best_norm, opts.max_iterations, false};
}

NewtonOutcome solve_by_continuation(const QuantumNumbers& m, const ModelParams& params,
                                    const SolverOptions& opts) {
  // Start near the fermionized regime where the free-fermion guess is globally
  // reliable, then walk the coupling down geometrically reusing each solution.
  const double c_target = params.coupling();
  double c = 100.0 * c_target;
  ModelParams p(params.n_particles(), c, params.ring_length());
  NewtonOutcome out =
      newton_solve(m, p, opts, limit_rapidities(m, p, CouplingLimit::infinite_coupling));
  if (!out.converged) return out;
  while (c > c_target) {
    c = std::max(c / 2.0, c_target);
    p = ModelParams(params.n_particles(), c, params.ring_length());
    out = newton_solve(m, p, opts, std::move(out.rapidities));
    if (!out.converged) return out;
  }
  return out;
}

}  // namespace

std::vector<double> bethe_residual(std::span<const double> rapidities,
                                   const QuantumNumbers& m,
                                   const ModelParams& params) {
  check_dimensions(rapidities.size(), m.size());
  const std::size_t n = m.size();
  const double length = params.ring_length();
  const double c = params.coupling();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum scattering;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      scattering.add(std::atan((rapidities[i] - rapidities[k]) / c));
    }
    CompensatedSum acc;
    acc.add(rapidities[i]);
    acc.add(-(two_pi / length) * m.value(i));
    acc.add((2.0 / length) * scattering.result());
    f[i] = acc.result();
  }
  return f;
}

SquareMatrix bethe_jacobian(std::span<const double> rapidities,
                            const ModelParams& params) {
  const std::size_t n = rapidities.size();
  const double length = params.ring_length();
  const double c = params.coupling();
  SquareMatrix jac(n);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double d = rapidities[i] - rapidities[k];
      const double kernel = (2.0 / length) * c / (c * c + d * d);
      jac(i, k) = -kernel;
      diag += kernel;
    }
    jac(i, i) = diag;
  }
  return jac;
}

std::vector<double> limit_rapidities(const QuantumNumbers& m,
                                     const ModelParams& params,
                                     CouplingLimit limit) {
  const std::size_t n = m.size();
  const double scale = two_pi / params.ring_length();
  std::vector<double> lambda(n);
  if (limit == CouplingLimit::infinite_coupling) {
    for (std::size_t i = 0; i < n; ++i) lambda[i] = scale * m.value(i);
  } else {
    // lambda_j = (2pi/L)(m_j - j + (N+1)/2) with j = 1..N over the sorted set.
    const double offset = 0.5 * static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      lambda[i] = scale * (m.value(i) - static_cast<double>(i + 1) + offset);
    }
  }
  return lambda;
}

BetheState solve_state(const QuantumNumbers& m, const ModelParams& params,
                       const SolverOptions& opts) {
  opts.validate();
  if (m.size() != static_cast<std::size_t>(params.n_particles())) {
    throw ContractViolation("solve_state: quantum number count != n_particles");
  }

  const auto tg_start = [&] {
    return limit_rapidities(m, params, CouplingLimit::infinite_coupling);
  };
  const auto fb_start = [&] {
    return limit_rapidities(m, params, CouplingLimit::zero_coupling);
  };

  NewtonOutcome out{{}, std::numeric_limits<double>::infinity(), 0, false};
  double best_norm = out.residual_norm;

  const auto try_outcome = [&](NewtonOutcome candidate) {
    if (candidate.residual_norm < best_norm) {
      best_norm = candidate.residual_norm;
      out = std::move(candidate);
    }
    return out.converged;
  };

  bool done = false;
  switch (opts.guess_policy) {
    case GuessPolicy::strong_coupling:
      done = try_outcome(newton_solve(m, params, opts, tg_start()));
      break;
    case GuessPolicy::weak_coupling:
      done = try_outcome(newton_solve(m, params, opts, fb_start()));
      break;
    case GuessPolicy::continuation:
      done = try_outcome(solve_by_continuation(m, params, opts));
      break;
    case GuessPolicy::auto_select: {
      const bool fermionized = params.density_ratio() <= 1.0;
      done = try_outcome(newton_solve(m, params, opts, fermionized ? tg_start() : fb_start()));
      if (!done) {
        done = try_outcome(newton_solve(m, params, opts, fermionized ? fb_start() : tg_start()));
      }
      if (!done) done = try_outcome(solve_by_continuation(m, params, opts));
      break;
    }
  }
  if (!done) {
    throw NonConvergence("solve_state: Newton stagnated at residual " +
                             format_full(best_norm) + " for m = " + describe(m),
                         best_norm, m.twice_values());
  }

  std::sort(out.rapidities.begin(), out.rapidities.end());
  for (std::size_t i = 1; i < out.rapidities.size(); ++i) {
    if (!(out.rapidities[i] > out.rapidities[i - 1])) {
      throw NonConvergence("solve_state: coincident rapidities for m = " + describe(m),
                           out.residual_norm, m.twice_values());
    }
  }

  BetheState state{m, std::move(out.rapidities), 0.0, 0.0, out.residual_norm, {}};
  CompensatedSum energy, momentum;
  for (double l : state.rapidities) {
    energy.add(l * l);
    momentum.add(l);
  }
  state.energy = energy.result();
  state.momentum = momentum.result();
  return state;
}

double conserved_charge(const BetheState& state, int k) {
  if (k < 1) throw ContractViolation("conserved_charge: k must be >= 1");
  CompensatedSum acc;
  for (double l : state.rapidities) {
    double p = 1.0;
    for (int j = 0; j < k; ++j) p *= l;
    acc.add(p);
  }
  return acc.result();
}

}  // namespace bsl
