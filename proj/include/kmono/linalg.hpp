#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "kmono/errors.hpp"
#include "kmono/rational.hpp"

namespace kmono {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix with zero extent");
  }

  Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix with zero extent");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

/// Vandermonde matrix with entry (i, j) = xs[i]^j.
inline Matrix vandermonde(std::span<const Rational> xs) {
  Matrix v(xs.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational p(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      v(i, j) = p;
      p *= xs[i];
    }
  }
  return v;
}

/// Exact determinant.
///
/// Each row is first scaled by the lcm of its denominators so the remaining
/// work is Bareiss elimination over integers: every division is exact and
/// intermediate entries stay bounded by minors of the scaled matrix.
inline Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<BigInt> a(n * n);
  BigInt scale(1);
  for (std::size_t r = 0; r < n; ++r) {
    BigInt l(1);
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).mpq().get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      const auto& q = m(r, c).mpq();
      a[r * n + c] = q.get_num() * (l / q.get_den());
    }
    scale *= l;
  }
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * n + c]; };

  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j));
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  BigInt det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return Rational(det, scale);
}

/// Exact solution of m * x = rhs by Gauss-Jordan elimination.
inline std::vector<Rational> solve_linear(const Matrix& m, std::span<const Rational> rhs) {
  if (!m.is_square()) throw DimensionError("solve_linear needs a square matrix");
  const std::size_t n = m.rows();
  if (rhs.size() != n) throw DimensionError("right-hand side length mismatch");

  Matrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = rhs[r];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && aug(p, k).is_zero()) ++p;
    if (p == n) throw SingularMatrixError("singular linear system");
    if (p != k)
      for (std::size_t c = k; c <= n; ++c) std::swap(aug(k, c), aug(p, c));
    const Rational pivot = aug(k, k);
    for (std::size_t c = k; c <= n; ++c) aug(k, c) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || aug(i, k).is_zero()) continue;
      const Rational f = aug(i, k);
      for (std::size_t c = k; c <= n; ++c) aug(i, c) -= f * aug(k, c);
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

}  // namespace kmono
