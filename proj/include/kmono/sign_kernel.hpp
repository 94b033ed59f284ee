#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/rational.hpp"

namespace kmono {

/// Tuple-sign predicate over integer coordinates.
///
/// The sequence is rescaled by the lcm of its x- and y-denominators (both
/// positive, so signs are unchanged). For increasing X_0 < ... < X_k,
///
///   sgn nabla_k = sgn sum_i (-1)^(k-i) Y_i prod_{a<b; a,b != i} (X_b - X_a),
///
/// i.e. nabla_k multiplied by the positive Vandermonde product. This route
/// shares no code with the rational divided-difference recursion and the
/// two are cross-checked in the tests.
class IntegerSignKernel {
 public:
  explicit IntegerSignKernel(const PointSequence& seq) {
    BigInt dx(1), dy(1);
    for (const auto& p : seq) {
      mpz_lcm(dx.get_mpz_t(), dx.get_mpz_t(), p.x.mpq().get_den_mpz_t());
      mpz_lcm(dy.get_mpz_t(), dy.get_mpz_t(), p.y.mpq().get_den_mpz_t());
    }
    xs_.reserve(seq.size());
    ys_.reserve(seq.size());
    for (const auto& p : seq) {
      xs_.push_back(p.x.num() * (dx / p.x.den()));
      ys_.push_back(p.y.num() * (dy / p.y.den()));
    }
  }

  std::size_t size() const noexcept { return xs_.size(); }

  /// Largest coordinate bit length, useful for cost estimates.
  std::size_t max_bits() const {
    std::size_t b = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      b = std::max(b, mpz_sizeinbase(xs_[i].get_mpz_t(), 2));
      b = std::max(b, mpz_sizeinbase(ys_[i].get_mpz_t(), 2));
    }
    return b;
  }

  /// Sign of the tuple at increasing indices `t` (order k = |t| - 1).
  Sign sign(std::span<const Index> t) const {
    const std::size_t m = t.size();
    if (m == 0) throw ArityError("empty tuple");
    const std::size_t k = m - 1;
    BigInt sum(0), prod;
    for (std::size_t i = 0; i < m; ++i) {
      prod = ys_[t[i]];
      for (std::size_t a = 0; a < m; ++a) {
        if (a == i) continue;
        for (std::size_t b = a + 1; b < m; ++b) {
          if (b == i) continue;
          prod *= xs_[t[b]] - xs_[t[a]];
        }
      }
      if ((k - i) % 2) sum -= prod; else sum += prod;
    }
    return sign_of(sgn(sum));
  }

  /// Signs of every tuple prefix + {d} for d in [first, size()), delivered
  /// as sink(d, sign) in increasing d. The prefix-only products are formed
  /// once, leaving O(k) multiplications per d.
  template <class Sink>
  void extend_prefix(std::span<const Index> prefix, Index first, Sink&& sink) const {
    const std::size_t k = prefix.size();  // order of the resulting tuples
    // coef[i] = (-1)^(k-i) Y_{p_i} prod_{pairs in prefix avoiding i}
    std::vector<BigInt> coef(k);
    BigInt vprefix(1);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) vprefix *= xs_[prefix[b]] - xs_[prefix[a]];
    for (std::size_t i = 0; i < k; ++i) {
      BigInt prod = ys_[prefix[i]];
      for (std::size_t a = 0; a < k; ++a) {
        if (a == i) continue;
        for (std::size_t b = a + 1; b < k; ++b) {
          if (b == i) continue;
          prod *= xs_[prefix[b]] - xs_[prefix[a]];
        }
      }
      coef[i] = ((k - i) % 2) ? BigInt(-prod) : prod;
    }

    std::vector<BigInt> e(k), pre(k + 1), suf(k + 1);
    BigInt sum, term;
    for (Index d = first; d < xs_.size(); ++d) {
      for (std::size_t j = 0; j < k; ++j)
        mpz_sub(e[j].get_mpz_t(), xs_[d].get_mpz_t(), xs_[prefix[j]].get_mpz_t());
      pre[0] = 1;
      for (std::size_t j = 0; j < k; ++j) mpz_mul(pre[j + 1].get_mpz_t(), pre[j].get_mpz_t(), e[j].get_mpz_t());
      suf[k] = 1;
      for (std::size_t j = k; j-- > 0;) mpz_mul(suf[j].get_mpz_t(), suf[j + 1].get_mpz_t(), e[j].get_mpz_t());
      mpz_mul(sum.get_mpz_t(), ys_[d].get_mpz_t(), vprefix.get_mpz_t());
      for (std::size_t i = 0; i < k; ++i) {
        mpz_mul(term.get_mpz_t(), pre[i].get_mpz_t(), suf[i + 1].get_mpz_t());
        mpz_addmul(sum.get_mpz_t(), term.get_mpz_t(), coef[i].get_mpz_t());
      }
      sink(d, sign_of(mpz_sgn(sum.get_mpz_t())));
    }
  }

 private:
  std::vector<BigInt> xs_;
  std::vector<BigInt> ys_;
};

}  // namespace kmono
