#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "kmono/rational.hpp"

namespace kmono {

/// Polynomial with ascending coefficients a_0 .. a_d. Trailing zeros are
/// stripped on construction, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }

  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

  /// Coefficient of x^i, zero past the degree.
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  /// p(x) * (x - root)
  Polynomial times_linear(const Rational& root) const {
    if (c_.empty()) return {};
    std::vector<Rational> out(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      out[i + 1] += c_[i];
      out[i] -= c_[i] * root;
    }
    return Polynomial(std::move(out));
  }

  Polynomial plus_constant(const Rational& v) const {
    auto out = c_;
    if (out.empty()) out.emplace_back(0);
    out[0] += v;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Horner evaluation.
inline Rational eval_poly(const Polynomial& p, const Rational& x) {
  Rational acc(0);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

}  // namespace kmono
