#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "kmono/errors.hpp"

namespace kmono {

using Index = std::size_t;
using IndexTuple = std::vector<Index>;

/// C(n, k) in 64 bits; throws BudgetError on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw BudgetError("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// Pascal table binom[n][k] for n <= max_n, k <= max_k (saturating at
/// UINT64_MAX). Used for colex ranking in hot loops.
class BinomialTable {
 public:
  BinomialTable(std::size_t max_n, std::size_t max_k)
      : cols_(max_k + 1), t_((max_n + 1) * (max_k + 1), 0) {
    for (std::size_t n = 0; n <= max_n; ++n) {
      at(n, 0) = 1;
      for (std::size_t k = 1; k <= max_k && k <= n; ++k) {
        const auto a = at(n - 1, k - 1);
        const auto b = (k <= n - 1) ? at(n - 1, k) : 0;
        at(n, k) = (a > std::numeric_limits<std::uint64_t>::max() - b)
                       ? std::numeric_limits<std::uint64_t>::max()
                       : a + b;
      }
    }
  }

  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    return k >= cols_ ? 0 : t_[n * cols_ + k];
  }

 private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return t_[n * cols_ + k]; }
  std::size_t cols_;
  std::vector<std::uint64_t> t_;
};

/// Colex rank of a strictly increasing tuple: sum_j C(t_j, j + 1).
inline std::uint64_t colex_rank(std::span<const Index> t, const BinomialTable& b) {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < t.size(); ++j) r += b(t[j], j + 1);
  return r;
}

/// Inverse of colex_rank for tuples of size k.
inline IndexTuple colex_unrank(std::uint64_t rank, std::size_t k, const BinomialTable& b) {
  IndexTuple t(k);
  for (std::size_t j = k; j-- > 0;) {
    Index v = j;
    while (b(v + 1, j + 1) <= rank) ++v;
    t[j] = v;
    rank -= b(v, j + 1);
  }
  return t;
}

/// Advances `t` (increasing, entries < n) to the next combination in
/// lexicographic order. Returns false after the last one.
inline bool next_combination(std::span<Index> t, std::size_t n) {
  const std::size_t k = t.size();
  std::size_t i = k;
  while (i > 0 && t[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++t[i - 1];
  for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  return true;
}

inline IndexTuple first_combination(std::size_t k) {
  IndexTuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  return t;
}

/// Calls f(tuple) for every k-subset of [0, n) in lexicographic order; stops
/// early when f returns false. Returns false iff stopped early.
template <class F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return true;
  IndexTuple t = first_combination(k);
  do {
    if (!f(std::span<const Index>(t))) return false;
  } while (k > 0 && next_combination(t, n));
  return true;
}

inline bool is_strictly_increasing(std::span<const Index> t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] >= t[i]) return false;
  return true;
}

}  // namespace kmono
