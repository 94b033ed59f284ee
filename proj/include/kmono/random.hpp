#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "kmono/combinatorics.hpp"

namespace kmono {

/// Seeded generator with portable bounded draws (std distributions are not
/// specified bit-for-bit across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform k-subset of [0, n), sorted; k <= n.
  IndexTuple subset(std::size_t n, std::size_t k) {
    IndexTuple t;
    t.reserve(k);
    while (t.size() < k) {
      const Index v = below(n);
      bool dup = false;
      for (auto u : t) dup |= (u == v);
      if (!dup) t.push_back(v);
    }
    std::sort(t.begin(), t.end());
    return t;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace kmono
