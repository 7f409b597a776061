#pragma once

#include <cstdint>
#include <optional>

#include "bsl/model.hpp"

namespace bsl {

/// Streams every strictly increasing N-subset of the admissible quantum
/// numbers {-(M-1), ..., M-1} (odd N) in lexicographic order, exactly once.
/// An exact momentum filter prunes the search with partial-sum bounds, so
/// the cost tracks the number of emitted sets, not C(2M-1, N).
///
/// N > 2M-1 yields an empty stream.
class QuantumSetEnumerator {
 public:
  QuantumSetEnumerator(int n_particles, std::int64_t cutoff,
                       std::optional<std::int64_t> momentum_filter = {},
                       std::optional<std::int64_t> max_abs_value = {});

  /// Advances the stream; returns false when exhausted.
  bool next(QuantumNumbers& out);

  /// C(2M-1, N); throws ContractViolation on uint64 overflow.
  static std::uint64_t unfiltered_count(int n_particles, std::int64_t cutoff);

 private:
  bool feasible(int depth, std::int64_t value) const;

  int n_;
  std::int64_t cutoff_;
  std::int64_t lo_, hi_;
  std::optional<std::int64_t> target_;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> prefix_sum_;
  std::int64_t candidate_ = 0;
  int depth_ = 0;
  bool exhausted_ = false;
};

}  // namespace bsl
