#include "bsl/unfold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace bsl {

namespace {

double poly_eval(const std::vector<double>& coeffs, double u) {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * u + coeffs[i];
  return v;
}

double poly_derivative(const std::vector<double>& coeffs, double u) {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;) {
    v = v * u + static_cast<double>(i) * coeffs[i];
  }
  return v;
}

/// Least squares of y against polynomials of x on the scaled variable u.
std::vector<double> fit_polynomial(std::span<const double> x,
                                   std::span<const double> y, int degree,
                                   double center, double halfwidth) {
  const auto rows = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd vand(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double u = (x[static_cast<std::size_t>(r)] - center) / halfwidth;
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      vand(r, c) = p;
      p *= u;
    }
    rhs(r) = y[static_cast<std::size_t>(r)];
  }
  const Eigen::VectorXd sol = vand.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

bool is_monotone(const std::vector<double>& coeffs, double u_lo, double u_hi) {
  // Dense derivative scan; heavy oversampling of the low polynomial degrees
  // used here.
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / samples;
    if (poly_derivative(coeffs, u) <= 0.0) return false;
  }
  return true;
}

void require_monotone(const std::vector<double>& coeffs, double u_lo, double u_hi,
                      const char* what) {
  if (!is_monotone(coeffs, u_lo, u_hi)) {
    throw UnfoldError(std::string("unfold: ") + what +
                      " is non-monotone over the window; use a different degree or "
                      "window");
  }
}

double invert_monotone(const std::vector<double>& coeffs, double target,
                       double u_lo, double u_hi) {
  // Monotonicity was verified on [u_lo, u_hi]; every target must fall inside
  // the fitted endpoint values there.
  double lo = u_lo, hi = u_hi;
  if (poly_eval(coeffs, lo) > target || poly_eval(coeffs, hi) < target) {
    throw UnfoldError(
        "unfold: a level falls outside the invertible range of the inverse fit");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (poly_eval(coeffs, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double UnfoldedSequence::mean_spacing() const {
  if (values.size() < 2) return 0.0;
  return (values.back() - values.front()) / static_cast<double>(values.size() - 1);
}

UnfoldedSequence unfold(std::span<const double> levels, int degree,
                        UnfoldConvention convention, std::size_t source_offset) {
  if (degree < 1) throw ContractViolation("unfold: degree must be >= 1");
  const std::size_t n = levels.size();
  if (n < 10 * static_cast<std::size_t>(degree + 1)) {
    throw ContractViolation("unfold: need at least 10*(degree+1) levels");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (levels[i] < levels[i - 1]) throw ContractViolation("unfold: levels not sorted");
  }

  // Midpoint staircase convention: eta(E_n) = n - 1/2.
  std::vector<double> staircase(n);
  for (std::size_t i = 0; i < n; ++i) staircase[i] = static_cast<double>(i) + 0.5;

  UnfoldedSequence out;
  out.convention = convention;
  out.source_begin = source_offset;
  out.source_end = source_offset + n;
  out.values.resize(n);

  if (convention == UnfoldConvention::direct) {
    out.center = 0.5 * (levels.front() + levels.back());
    out.halfwidth = std::max(0.5 * (levels.back() - levels.front()), 1e-300);
    out.smooth_coeffs = fit_polynomial(levels, staircase, degree, out.center, out.halfwidth);
    require_monotone(out.smooth_coeffs, -1.0, 1.0, "smooth staircase fit");
    for (std::size_t i = 0; i < n; ++i) {
      out.values[i] = poly_eval(out.smooth_coeffs, (levels[i] - out.center) / out.halfwidth);
    }
  } else {
    out.center = 0.5 * (staircase.front() + staircase.back());
    out.halfwidth = std::max(0.5 * (staircase.back() - staircase.front()), 1e-300);
    out.smooth_coeffs = fit_polynomial(staircase, levels, degree, out.center, out.halfwidth);
    // Margin beyond the fitted range so the endpoint levels stay invertible
    // despite their fit residuals; shrunk until the monotonicity guarantee
    // covers the whole bracket.
    double pad = 8.0 / out.halfwidth;
    const double pad_floor = 0.25 / out.halfwidth;
    while (pad > pad_floor &&
           !is_monotone(out.smooth_coeffs, -1.0 - pad, 1.0 + pad)) {
      pad *= 0.5;
    }
    require_monotone(out.smooth_coeffs, -1.0 - pad, 1.0 + pad, "inverse staircase fit");
    for (std::size_t i = 0; i < n; ++i) {
      const double u = invert_monotone(out.smooth_coeffs, levels[i], -1.0 - pad, 1.0 + pad);
      out.values[i] = out.center + out.halfwidth * u;
    }
  }

  for (std::size_t i = 1; i < n; ++i) {
    if (!(out.values[i] > out.values[i - 1])) {
      throw UnfoldError(
          "unfold: mapped sequence is not strictly increasing (degenerate input "
          "levels?); consider deduplication");
    }
  }
  const double mean = out.mean_spacing();
  if (!(mean >= 0.99 && mean <= 1.01)) {
    throw UnfoldError("unfold: mean unfolded spacing " + std::to_string(mean) +
                      " outside [0.99, 1.01]; the smooth model does not describe "
                      "this window");
  }
  return out;
}

}  // namespace bsl
