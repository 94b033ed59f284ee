#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "kmono/errors.hpp"

namespace kmono {

/// Strict sign of an exact quantity.
enum class Sign : std::int8_t { negative = -1, zero = 0, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

constexpr Sign sign_of(int v) noexcept {
  return v > 0 ? Sign::positive : (v < 0 ? Sign::negative : Sign::zero);
}

constexpr Sign operator-(Sign s) noexcept { return sign_of(-to_int(s)); }

constexpr Sign operator*(Sign a, Sign b) noexcept {
  return sign_of(to_int(a) * to_int(b));
}

/// (-1)^e as a Sign.
constexpr Sign parity_sign(long long e) noexcept {
  return (e % 2 == 0) ? Sign::positive : Sign::negative;
}

using BigInt = mpz_class;

/// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
///
/// Every arithmetic result is canonicalized, so equal values have equal
/// representations and equal hashes.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : q_(v) {}

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

  static Rational from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    r.q_ = std::move(q);
    return r;
  }

  /// Accepts "num/den" or an integer literal; the value need not be reduced.
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw FormatError("empty rational literal");
    const auto slash = s.find('/');
    BigInt num, den(1);
    try {
      if (slash == std::string::npos) {
        num = BigInt(s, 10);
      } else {
        num = BigInt(s.substr(0, slash), 10);
        den = BigInt(s.substr(slash + 1), 10);
      }
    } catch (const std::invalid_argument&) {
      throw FormatError("malformed rational literal '" + s + "'");
    }
    if (den == 0) throw FormatError("zero denominator in '" + s + "'");
    return Rational(num, den);
  }

  /// Canonical "num/den"; integers print without the denominator.
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& mpq() const noexcept { return q_; }

  Sign sign() const noexcept { return sign_of(sgn(q_)); }
  bool is_zero() const noexcept { return sgn(q_) == 0; }

  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return from_mpq(-q_); }

  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  /// Integer power, e >= 0.
  friend Rational pow(const Rational& base, unsigned e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.q_.get_den_mpz_t(), e);
    return Rational(n, d);
  }

 private:
  mpq_class q_;  // kept canonical
};

inline Rational abs(const Rational& r) { return r.sign() == Sign::negative ? -r : r; }

}  // namespace kmono

template <>
struct std::hash<kmono::Rational> {
  std::size_t operator()(const kmono::Rational& r) const noexcept {
    const auto h1 = mpz_get_ui(r.mpq().get_num_mpz_t());
    const auto h2 = mpz_get_ui(r.mpq().get_den_mpz_t());
    const auto s = static_cast<std::size_t>(mpz_sgn(r.mpq().get_num_mpz_t()) + 1);
    return (h1 * 0x9e3779b97f4a7c15ULL) ^ (h2 + 0x7f4a7c159e3779b9ULL + (s << 6));
  }
};
