#include "bsl/enumerate.hpp"

#include <algorithm>

namespace bsl {

QuantumSetEnumerator::QuantumSetEnumerator(int n_particles, std::int64_t cutoff,
                                           std::optional<std::int64_t> momentum_filter,
                                           std::optional<std::int64_t> max_abs_value)
    : n_(n_particles), cutoff_(cutoff), target_(momentum_filter) {
  if (n_ < 1) throw ContractViolation("enumerate: n_particles must be >= 1");
  if (cutoff_ < 1) throw ContractViolation("enumerate: cutoff must be >= 1");
  if (n_ % 2 == 0) {
    throw ContractViolation("enumerate: even particle numbers are not supported");
  }
  lo_ = -(cutoff_ - 1);
  hi_ = cutoff_ - 1;
  if (max_abs_value) {
    lo_ = std::max(lo_, -*max_abs_value);
    hi_ = std::min(hi_, *max_abs_value);
  }
  current_.assign(static_cast<std::size_t>(n_), 0);
  prefix_sum_.assign(static_cast<std::size_t>(n_) + 1, 0);
  candidate_ = lo_;
  depth_ = 0;
  exhausted_ = hi_ - lo_ + 1 < n_;
}

bool QuantumSetEnumerator::feasible(int depth, std::int64_t value) const {
  if (!target_) return true;
  const std::int64_t partial = prefix_sum_[static_cast<std::size_t>(depth)] + value;
  const std::int64_t rem = n_ - depth - 1;
  const std::int64_t need = *target_ - partial;
  // Remaining values are strictly increasing above `value` and bounded by hi_.
  const std::int64_t min_rem = rem * value + rem * (rem + 1) / 2;
  const std::int64_t max_rem = rem * hi_ - rem * (rem - 1) / 2;
  return need >= min_rem && need <= max_rem;
}

bool QuantumSetEnumerator::next(QuantumNumbers& out) {
  if (exhausted_) return false;
  while (true) {
    if (depth_ == n_) {
      // A complete set is materialized; emit it, then resume at the last slot.
      out = QuantumNumbers::from_integers(current_, cutoff_);
      --depth_;
      candidate_ = current_[static_cast<std::size_t>(depth_)] + 1;
      return true;
    }
    const std::int64_t max_here = hi_ - (n_ - 1 - depth_);
    if (candidate_ > max_here) {
      if (depth_ == 0) {
        exhausted_ = true;
        return false;
      }
      --depth_;
      candidate_ = current_[static_cast<std::size_t>(depth_)] + 1;
      continue;
    }
    if (feasible(depth_, candidate_)) {
      current_[static_cast<std::size_t>(depth_)] = candidate_;
      prefix_sum_[static_cast<std::size_t>(depth_) + 1] =
          prefix_sum_[static_cast<std::size_t>(depth_)] + candidate_;
      ++depth_;
      ++candidate_;
    } else {
      ++candidate_;
    }
  }
}

std::uint64_t QuantumSetEnumerator::unfiltered_count(int n_particles,
                                                     std::int64_t cutoff) {
  if (n_particles < 1 || cutoff < 1) {
    throw ContractViolation("enumerate: invalid count arguments");
  }
  const std::uint64_t pool = static_cast<std::uint64_t>(2 * cutoff - 1);
  const std::uint64_t k = static_cast<std::uint64_t>(n_particles);
  if (k > pool) return 0;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (pool - k + i) / i;
    if (result > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw ContractViolation("enumerate: subset count overflows uint64");
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace bsl
