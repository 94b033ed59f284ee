#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kmono/coloring.hpp"
#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"

namespace kmono {

/// An increasing index list whose consecutive l-windows all carry `color`.
/// Lists shorter than the arity have no windows; they report color 1.
struct SearchResult {
  std::size_t length = 0;
  IndexTuple indices;
  ColorId color = kColorOne;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Every consecutive l-window of `idx` has color `color`.
inline bool is_monochromatic_path(const Coloring& c, std::span<const Index> idx, ColorId color) {
  const std::size_t l = c.arity();
  if (!is_strictly_increasing(idx)) return false;
  for (std::size_t s = 0; s + l <= idx.size(); ++s)
    if (c.color(idx.subspan(s, l)) != color) return false;
  return true;
}

/// Every l-subset of `idx` has one color.
inline bool is_homogeneous(const Coloring& c, std::span<const Index> idx) {
  const std::size_t l = c.arity();
  if (!is_strictly_increasing(idx)) return false;
  if (idx.size() <= l) return true;
  IndexTuple sub(l);
  std::optional<ColorId> seen;
  return for_each_combination(idx.size(), l, [&](std::span<const Index> t) {
    for (std::size_t j = 0; j < l; ++j) sub[j] = idx[t[j]];
    const ColorId col = c.color(sub);
    if (!seen) seen = col;
    return col == *seen;
  });
}

/// Longest monochromatic monotone path.
///
/// Dynamic program over states (s, c), s an (l-1)-subset read as the first
/// l-1 entries of a path: best(s, c) = max over d > max(s) with
/// color(s + d) = c of 1 + best(shift(s, d), c). shift(s, d) starts later
/// than s, so sweeping states in reverse lexicographic order sees every
/// successor first. Among longest paths the lexicographically smallest
/// index list is returned.
///
/// For transitive colorings the result is a largest homogeneous set.
inline SearchResult longest_monochromatic_path(const Coloring& c, unsigned workers = 1) {
  const std::size_t n = c.ground_size();
  const std::size_t l = c.arity();
  if (l < 2) throw ArityError("monotone paths need arity >= 2");
  SearchResult res;
  if (n < l) {
    res.length = n;
    res.indices = first_combination(n);
    return res;
  }
  c.materialize(workers);
  const bool cached = c.fully_cached();
  const BinomialTable& b = c.binomials();
  const std::size_t m = l - 1;  // state width
  const std::uint64_t states = b(n, m);

  // best[2 * rank + (color - 1)]: number of elements a path may add after
  // its first m entries; 0 means no window of that color can follow.
  std::vector<std::uint16_t> best(2 * states, 0);
  IndexTuple tuple(l);

  auto color_at = [&](std::span<const Index> t, std::uint64_t rank) -> ColorId {
    if (cached) return c.cached(rank);
    return c.color_ranked(t, rank);
  };

  // Reverse lexicographic sweep over m-subsets.
  IndexTuple s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = n - m + j;
  std::uint16_t top = 0;
  while (true) {
    const std::uint64_t srank = colex_rank(s, b);
    const std::uint64_t trank_base = srank;
    std::uint64_t next_base = 0;  // colex rank of s[1..] within width m
    for (std::size_t j = 1; j < m; ++j) next_base += b(s[j], j);
    std::uint16_t best1 = 0, best2 = 0;
    const Index start = m ? s[m - 1] + 1 : 0;
    for (std::size_t j = 0; j < m; ++j) tuple[j] = s[j];
    for (Index d = start; d < n; ++d) {
      tuple[m] = d;
      const ColorId col = color_at(tuple, trank_base + b(d, l));
      const std::uint64_t nrank = next_base + b(d, m);
      const std::uint16_t cand = static_cast<std::uint16_t>(1 + best[2 * nrank + (col - 1)]);
      if (col == kColorOne) {
        if (cand > best1) best1 = cand;
      } else if (cand > best2) {
        best2 = cand;
      }
    }
    best[2 * srank] = best1;
    best[2 * srank + 1] = best2;
    top = std::max({top, best1, best2});

    // previous m-subset in lexicographic order
    if (m == 0) break;
    std::size_t i = m;
    while (i > 0 && (s[i - 1] == (i >= 2 ? s[i - 2] + 1 : 0))) --i;
    if (i == 0) break;
    --s[i - 1];
    for (std::size_t j = i; j < m; ++j) s[j] = n - m + j;
  }

  // Lexicographically smallest start state achieving the optimum.
  res.length = m + top;
  std::vector<ColorId> colors;
  IndexTuple cur = first_combination(m);
  do {
    const auto r = colex_rank(cur, b);
    if (best[2 * r] == top) colors.push_back(kColorOne);
    if (best[2 * r + 1] == top) colors.push_back(kColorTwo);
    if (!colors.empty()) break;
  } while (next_combination(cur, n));

  res.indices = cur;
  std::uint16_t remaining = top;
  while (remaining > 0) {
    const std::uint64_t srank = colex_rank(cur, b);
    std::uint64_t next_base = 0;
    for (std::size_t j = 1; j < m; ++j) next_base += b(cur[j], j);
    for (std::size_t j = 0; j < m; ++j) tuple[j] = cur[j];
    Index chosen = n;
    std::vector<ColorId> keep;
    for (Index d = (m ? cur[m - 1] + 1 : 0); d < n && chosen == n; ++d) {
      tuple[m] = d;
      const ColorId col = color_at(tuple, srank + b(d, l));
      const std::uint64_t nrank = next_base + b(d, m);
      for (ColorId want : colors) {
        if (col == want && best[2 * nrank + (col - 1)] + 1 == remaining) {
          chosen = d;
          keep.push_back(col);
        }
      }
    }
    colors = keep;
    res.indices.push_back(chosen);
    for (std::size_t j = 0; j + 1 < m; ++j) cur[j] = cur[j + 1];
    if (m) cur[m - 1] = chosen;
    --remaining;
  }
  res.color = colors.front();
  return res;
}

/// Largest homogeneous subset by enumeration, sizes descending, first hit
/// in lexicographic order. Oracle for the path search.
inline SearchResult largest_homogeneous_bruteforce(const Coloring& c, std::size_t cap = 16) {
  const std::size_t n = c.ground_size();
  const std::size_t l = c.arity();
  if (n > cap)
    throw BudgetError("brute force limited to " + std::to_string(cap) + " elements, got " +
                      std::to_string(n));
  for (std::size_t size = n; size > 0; --size) {
    SearchResult found;
    bool hit = false;
    for_each_combination(n, size, [&](std::span<const Index> t) {
      if (!is_homogeneous(c, t)) return true;
      found.length = size;
      found.indices.assign(t.begin(), t.end());
      found.color = size >= l ? c.color(t.first(l)) : kColorOne;
      hit = true;
      return false;
    });
    if (hit) return found;
  }
  return {};
}

/// Longest k-th order monotone subsequence of a k-general sequence.
inline SearchResult longest_kth_order_monotone(const PointSequence& seq, std::size_t k,
                                               unsigned workers = 1) {
  return longest_monochromatic_path(geometric_coloring(seq, k), workers);
}

}  // namespace kmono
