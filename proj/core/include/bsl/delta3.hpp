#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bsl/unfold.hpp"

namespace bsl {

struct LinearFit {
  double slope = 0.0;      // gamma_0
  double intercept = 0.0;  // gamma_1
  double w_min = 0.0;
  double w_max = 0.0;
};

struct ExponentFit {
  double alpha = 0.0;  // Delta3 ~ W^alpha
  double log_prefactor = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
};

/// Sampled spectral rigidity Delta3(W), averaged over window starts placed at
/// consecutive unfolded levels from the beginning of the analysis range.
struct Delta3Curve {
  std::vector<double> window_lengths;
  std::vector<double> values;
  std::size_t n_starts = 0;
  std::optional<LinearFit> fit;
  std::optional<ExponentFit> exponent;
};

/// Spectral rigidity of one window: the mean-squared deviation of the
/// windowed counting staircase from its best linear fit,
///   Delta3 = min_{A,B} (1/W) integral_{xs}^{xs+W} (eta(xi) - A xi - B)^2 dxi,
/// evaluated in closed form. The staircase counts levels in (xs, xs + W]; a
/// level exactly at the window start only offsets the staircase by a
/// constant, which the fitted intercept absorbs, so the edge convention does
/// not affect the value. Internally the window is translated to start at the
/// origin; the minimizer and the quadratic form are otherwise exactly the
/// x1/x2/p/q/t expressions, with x2 = (2/3)(W^2 + 3 xs^2 + 3 xs W) as the
/// exact integral.
double delta3_closed_form(const UnfoldedSequence& unfolded, double window_start,
                          double window_length);

/// Averages delta3_closed_form over n_starts windows anchored at the first
/// n_starts unfolded levels, for each window length in w_grid. Deterministic;
/// throws ContractViolation naming the largest feasible W when the data are
/// too short.
Delta3Curve delta3_curve(const UnfoldedSequence& unfolded,
                         std::span<const double> w_grid, std::size_t n_starts);

/// Ordinary least squares of Delta3 against W over grid points inside
/// [w_min, w_max] (at least 3 required).
LinearFit fit_slope(const Delta3Curve& curve, double w_min, double w_max);

/// Least-squares slope of log Delta3 against log W; all values in range must
/// be positive.
ExponentFit fit_exponent(const Delta3Curve& curve, double w_min, double w_max);

}  // namespace bsl
