#include "bsl/delta3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsl/numeric.hpp"

namespace bsl {

namespace {

double delta3_window(std::span<const double> xi, double xs, double w) {
  // Levels strictly inside (xs, xs+w], translated so the window starts at 0.
  const auto begin = std::upper_bound(xi.begin(), xi.end(), xs);
  const auto end = std::upper_bound(xi.begin(), xi.end(), xs + w);
  const auto m = static_cast<std::size_t>(end - begin);
  if (m == 0) return 0.0;  // constant staircase: the fit is exact

  // Piecewise-constant staircase integrals, summed level by level:
  //   p = (2/W) int eta           = (2/W) (m W - sum z_j)
  //   q = (2/W) int xi eta        = (1/W) (m W^2 - sum z_j^2)
  //   t = (2/W) int eta^2         = (2/W) (m^2 W - sum (2j-1) z_j)
  CompensatedSum sum_z, sum_z2, sum_wz;
  std::size_t j = 0;
  for (auto it = begin; it != end; ++it, ++j) {
    const double z = *it - xs;
    sum_z.add(z);
    sum_z2.add(z * z);
    sum_wz.add(static_cast<double>(2 * j + 1) * z);
  }
  const double count = static_cast<double>(m);
  const double p = (2.0 / w) * (count * w - sum_z.result());
  const double q = (1.0 / w) * (count * w * w - sum_z2.result());
  const double t = (2.0 / w) * (count * count * w - sum_wz.result());

  // x1 and x2 in the translated frame (xs = 0).
  const double x1 = w;
  const double x2 = (2.0 / 3.0) * w * w;
  const double den = x1 * x1 - 2.0 * x2;  // = -W^2/3
  const double a = (p * x1 - 2.0 * q) / den;
  const double b = (q * x1 - p * x2) / den;

  return 0.5 * t + 0.5 * a * a * x2 + b * b - a * q - b * p + a * b * x1;
}

}  // namespace

double delta3_closed_form(const UnfoldedSequence& unfolded, double window_start,
                          double window_length) {
  if (!(window_length > 0.0)) {
    throw ContractViolation("delta3: window length must be > 0");
  }
  const auto& xi = unfolded.values;
  if (xi.empty()) throw ContractViolation("delta3: empty unfolded sequence");
  // The staircase is defined for any window that overlaps the data span;
  // delta3_curve additionally keeps its windows inside it.
  if (window_start > xi.back() || window_start + window_length < xi.front()) {
    throw ContractViolation("delta3: window outside the unfolded range");
  }
  return delta3_window(xi, window_start, window_length);
}

Delta3Curve delta3_curve(const UnfoldedSequence& unfolded,
                         std::span<const double> w_grid, std::size_t n_starts) {
  if (w_grid.empty()) throw ContractViolation("delta3_curve: empty window grid");
  if (n_starts < 1) throw ContractViolation("delta3_curve: n_starts must be >= 1");
  const auto& xi = unfolded.values;
  if (n_starts > xi.size()) {
    throw ContractViolation("delta3_curve: more starts than levels");
  }
  for (std::size_t i = 1; i < w_grid.size(); ++i) {
    if (!(w_grid[i] > w_grid[i - 1])) {
      throw ContractViolation("delta3_curve: window grid must be strictly increasing");
    }
  }
  const double last_start = xi[n_starts - 1];
  const double w_feasible = xi.back() - last_start;
  if (!(w_grid.back() <= w_feasible)) {
    throw ContractViolation(
        "delta3_curve: data too short for requested windows; largest feasible W "
        "with " + std::to_string(n_starts) + " starts is " + format_full(w_feasible));
  }

  Delta3Curve curve;
  curve.n_starts = n_starts;
  curve.window_lengths.assign(w_grid.begin(), w_grid.end());
  curve.values.reserve(w_grid.size());
  for (double w : w_grid) {
    if (!(w > 0.0)) throw ContractViolation("delta3_curve: window lengths must be > 0");
    CompensatedSum acc;  // fixed index order keeps the reduction deterministic
    for (std::size_t i = 0; i < n_starts; ++i) {
      acc.add(delta3_window(xi, xi[i], w));
    }
    curve.values.push_back(acc.result() / static_cast<double>(n_starts));
  }
  return curve;
}

namespace {

std::vector<std::size_t> grid_points_in(const Delta3Curve& curve, double w_min,
                                        double w_max) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < curve.window_lengths.size(); ++i) {
    const double w = curve.window_lengths[i];
    if (w >= w_min && w <= w_max) idx.push_back(i);
  }
  return idx;
}

/// Plain OLS line fit through the selected points.
std::pair<double, double> ols(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (double v : x) sx.add(v);
  for (double v : y) sy.add(v);
  const double mx = sx.result() / n;
  const double my = sy.result() / n;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
  }
  if (sxx.result() == 0.0) {
    throw ContractViolation("fit: degenerate abscissa grid");
  }
  const double slope = sxy.result() / sxx.result();
  return {slope, my - slope * mx};
}

}  // namespace

LinearFit fit_slope(const Delta3Curve& curve, double w_min, double w_max) {
  const auto idx = grid_points_in(curve, w_min, w_max);
  if (idx.size() < 3) {
    throw ContractViolation("fit_slope: need at least 3 grid points in range");
  }
  std::vector<double> x, y;
  for (std::size_t i : idx) {
    x.push_back(curve.window_lengths[i]);
    y.push_back(curve.values[i]);
  }
  const auto [slope, intercept] = ols(x, y);
  return LinearFit{slope, intercept, w_min, w_max};
}

ExponentFit fit_exponent(const Delta3Curve& curve, double w_min, double w_max) {
  const auto idx = grid_points_in(curve, w_min, w_max);
  if (idx.size() < 3) {
    throw ContractViolation("fit_exponent: need at least 3 grid points in range");
  }
  std::vector<double> x, y;
  for (std::size_t i : idx) {
    if (!(curve.values[i] > 0.0)) {
      throw ContractViolation("fit_exponent: non-positive Delta3 value in fit range");
    }
    x.push_back(std::log(curve.window_lengths[i]));
    y.push_back(std::log(curve.values[i]));
  }
  const auto [slope, intercept] = ols(x, y);
  return ExponentFit{slope, intercept, w_min, w_max};
}

}  // namespace bsl
