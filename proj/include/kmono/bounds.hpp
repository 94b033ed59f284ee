#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kmono/errors.hpp"
#include "kmono/rational.hpp"

namespace kmono {

inline constexpr std::size_t kDefaultMaxBits = std::size_t{1} << 20;

/// twr_1(x) = x, twr_{i+1}(x) = 2^twr_i(x).
inline BigInt tower(std::size_t k, const BigInt& x, std::size_t max_bits = kDefaultMaxBits) {
  if (k < 1) throw std::invalid_argument("tower height must be >= 1");
  if (x < 0) throw std::invalid_argument("tower argument must be >= 0");
  BigInt v = x;
  for (std::size_t i = 1; i < k; ++i) {
    if (v >= max_bits) throw BudgetError("tower value exceeds " + std::to_string(max_bits) + " bits");
    BigInt next;
    mpz_ui_pow_ui(next.get_mpz_t(), 2, v.get_ui());
    v = std::move(next);
  }
  return v;
}

inline BigInt binomial_big(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// (n-1)^2 + 1
inline BigInt monotone_subsequence_threshold(std::size_t n) {
  BigInt m(static_cast<unsigned long>(n - 1));
  return m * m + 1;
}

/// C(2n-4, n-2) + 1 for n >= 2.
inline BigInt convex_subset_threshold(std::size_t n) {
  return binomial_big(2 * n - 4, n - 2) + 1;
}

/// Upper bound on the Ramsey number of transitive 2-colorings of l-tuples:
/// exact for l = 2, 3; for l >= 4 the extraction recurrence
/// trrams_l(n) <= 2^(M^(l-1)) with M the bound for l - 1. Throws BudgetError
/// when the value would exceed `max_bits`.
inline BigInt transitive_ramsey_upper(std::size_t arity, std::size_t n,
                                      std::size_t max_bits = kDefaultMaxBits) {
  if (arity < 2 || n < 2) throw std::invalid_argument("transitive_ramsey_upper needs l, n >= 2");
  if (arity == 2) return monotone_subsequence_threshold(n);
  if (arity == 3) return convex_subset_threshold(n);
  const BigInt m = transitive_ramsey_upper(arity - 1, n, max_bits);
  if (mpz_sizeinbase(m.get_mpz_t(), 2) * (arity - 1) > 64)
    throw BudgetError("recurrence exponent exceeds 64 bits");
  BigInt e;
  mpz_pow_ui(e.get_mpz_t(), m.get_mpz_t(), arity - 1);
  if (e >= max_bits) throw BudgetError("recurrence bound exceeds " + std::to_string(max_bits) + " bits");
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, e.get_ui());
  return v;
}

/// What is known about ES_k(n), the least N such that every N-point
/// k-general sequence has an n-point k-th order monotone subset.
struct BoundsReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::optional<BigInt> known_lower;  // nullopt: unknown
  std::optional<BigInt> known_upper;
  /// log2 of an explicit (astronomical) upper bound when one is derivable.
  std::optional<BigInt> upper_log2;
  std::vector<std::string> formula_tags;
};

inline BoundsReport known_bounds(std::size_t k, std::size_t n) {
  if (k < 1 || n < 2) throw std::invalid_argument("known_bounds needs k >= 1 and n >= 2");
  BoundsReport r;
  r.k = k;
  r.n = n;
  if (k == 1) {
    r.known_lower = r.known_upper = monotone_subsequence_threshold(n);
    r.formula_tags.push_back("exact: (n-1)^2+1 (monotone subsequences, tight)");
    return r;
  }
  if (k == 2) {
    r.known_lower = r.known_upper = convex_subset_threshold(n);
    r.formula_tags.push_back("exact: C(2n-4,n-2)+1 (convex/concave subsets, tight)");
    return r;
  }
  if (n <= k + 1) {
    r.known_lower = r.known_upper = BigInt(static_cast<unsigned long>(n));
    r.formula_tags.push_back("exact: n <= k+1, at most one (k+1)-tuple");
    return r;
  }
  if (k == 3 && n % 2 == 1) {
    const std::size_t m = (n - 1) / 2;  // n = 2m + 1, m >= 2
    BigInt lower = tower(3, BigInt(static_cast<unsigned long>(m - 1))) + 1;
    r.known_lower = lower;
    r.formula_tags.push_back("lower: ES_3(2m+1) >= 2^(2^(m-1))+1 (clustered construction)");
  }
  try {
    const BigInt m = transitive_ramsey_upper(k, n);
    if (mpz_sizeinbase(m.get_mpz_t(), 2) * k <= 64) {
      BigInt e;
      mpz_pow_ui(e.get_mpz_t(), m.get_mpz_t(), k);
      r.upper_log2 = e;
      r.formula_tags.push_back("upper: ES_k(n) <= trrams_{k+1}(n) <= 2^(M^k), M = trrams_k(n)");
    }
  } catch (const BudgetError&) {
  }
  r.formula_tags.push_back("asymptotic: ES_k(n) <= twr_k(O(n)), constant unspecified");
  return r;
}

}  // namespace kmono
