#pragma once

#include <cstdint>
#include <random>

namespace expandlab::detail {

/// Uniform integer in [0, n), n > 0. Rejection sampling on the raw engine
/// output keeps draws identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  for (;;) {
    std::uint64_t v = eng();
    if (v < limit) return v % n;
  }
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_between(std::mt19937_64& eng, std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform_below(eng, span));
}

}  // namespace expandlab::detail
