#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace bsl {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Neumaier-compensated accumulator. The Bethe residual and the derived
/// energy/momentum sums are pushed through this so the attainable residual
/// floor is set by the rapidity representation, not by naive summation.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double result() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.result();
}

/// Minimal dense square matrix, row-major. Keeps Eigen out of the public API.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Round-trip-exact decimal encoding of a double (17 significant digits).
std::string format_full(double value);

/// Strict double parse; throws ParseError on trailing garbage.
double parse_full(const std::string& token);

}  // namespace bsl
