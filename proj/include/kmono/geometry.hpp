#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/polynomial.hpp"
#include "kmono/rational.hpp"

namespace kmono {

struct PlanarPoint {
  Rational x;
  Rational y;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// Planar points with strictly increasing x-coordinates.
class PointSequence {
 public:
  PointSequence() = default;

  explicit PointSequence(std::vector<PlanarPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i - 1].x < points_[i].x))
        throw DegenerateInputError(
            "x-coordinates must be strictly increasing (at index " + std::to_string(i) + ")",
            {i - 1, i});
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const PlanarPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<PlanarPoint>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  std::vector<PlanarPoint> select(std::span<const Index> idx) const {
    std::vector<PlanarPoint> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(points_.at(i));
    return out;
  }

  /// Subsequence at the given increasing indices.
  PointSequence subsequence(std::span<const Index> idx) const {
    return PointSequence(select(idx));
  }

  friend bool operator==(const PointSequence&, const PointSequence&) = default;

 private:
  std::vector<PlanarPoint> points_;
};

namespace detail {

inline void require_distinct_x(std::span<const PlanarPoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i].x == pts[j].x)
        throw DegenerateInputError("duplicate x-coordinate", {i, j});
}

inline void require_increasing_x(std::span<const PlanarPoint> pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1].x < pts[i].x))
      throw DegenerateInputError("tuple x-coordinates must be increasing", {i - 1, i});
}

/// Newton coefficients c_j = nabla_j(p_0..p_j), computed in place over the
/// divided-difference table.
inline std::vector<Rational> newton_coefficients(std::span<const PlanarPoint> pts) {
  const std::size_t n = pts.size();
  std::vector<Rational> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = pts[i].y;
  std::vector<Rational> coeffs;
  coeffs.reserve(n);
  if (n) coeffs.push_back(t[0]);
  for (std::size_t order = 1; order < n; ++order) {
    // t[i] holds nabla_{order-1}(p_i .. p_{i+order-1}).
    for (std::size_t i = 0; i + order < n; ++i)
      t[i] = (t[i + 1] - t[i]) / (pts[i + order].x - pts[i].x);
    coeffs.push_back(t[0]);
  }
  return coeffs;
}

}  // namespace detail

/// k-th divided difference of k+1 points with pairwise distinct x
/// (any order).
inline Rational divided_difference(std::span<const PlanarPoint> pts, std::size_t k) {
  if (pts.size() != k + 1)
    throw ArityError("divided difference of order " + std::to_string(k) + " needs " +
                     std::to_string(k + 1) + " points, got " + std::to_string(pts.size()));
  detail::require_distinct_x(pts);
  return detail::newton_coefficients(pts).back();
}

/// The unique polynomial of degree <= n-1 through n points with distinct x.
inline Polynomial newton_interpolate(std::span<const PlanarPoint> pts) {
  detail::require_distinct_x(pts);
  const auto c = detail::newton_coefficients(pts);
  Polynomial f;
  for (std::size_t i = c.size(); i-- > 0;) f = f.times_linear(pts[i].x).plus_constant(c[i]);
  return f;
}

/// Sign of a (k+1)-tuple with increasing x: the sign of its k-th divided
/// difference. Zero exactly when the tuple lies on a polynomial of degree
/// at most k-1.
inline Sign tuple_sign(std::span<const PlanarPoint> pts, std::size_t k) {
  if (pts.size() != k + 1)
    throw ArityError("tuple of order " + std::to_string(k) + " needs " + std::to_string(k + 1) +
                     " points");
  detail::require_increasing_x(pts);
  return detail::newton_coefficients(pts).back().sign();
}

struct GeneralPositionReport {
  bool general = true;
  std::optional<IndexTuple> violating;  // first degenerate (k+1)-tuple, lexicographic

  explicit operator bool() const noexcept { return general; }
};

/// True iff no k+1 points of `seq` lie on a polynomial of degree <= k-1.
inline GeneralPositionReport is_k_general_position(const PointSequence& seq, std::size_t k) {
  GeneralPositionReport rep;
  std::vector<PlanarPoint> buf(k + 1);
  for_each_combination(seq.size(), k + 1, [&](std::span<const Index> t) {
    for (std::size_t j = 0; j <= k; ++j) buf[j] = seq[t[j]];
    if (detail::newton_coefficients(buf).back().is_zero()) {
      rep.general = false;
      rep.violating = IndexTuple(t.begin(), t.end());
      return false;
    }
    return true;
  });
  return rep;
}

/// Sign of a k-general (k+1)-tuple read off from where `pts[pos]` sits
/// relative to the degree <= k-1 interpolant of the other k points.
/// With i = pos + 1: below gives (-1)^(k-i), above gives (-1)^(k+1-i).
inline Sign side_of_interpolant(std::span<const PlanarPoint> pts, std::size_t pos) {
  if (pts.size() < 2) throw ArityError("side_of_interpolant needs at least two points");
  if (pos >= pts.size()) throw IndexError("interpolant position out of range");
  detail::require_increasing_x(pts);
  const long k = static_cast<long>(pts.size()) - 1;
  const long i = static_cast<long>(pos) + 1;

  std::vector<PlanarPoint> rest;
  rest.reserve(pts.size() - 1);
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != pos) rest.push_back(pts[j]);
  const Rational at = eval_poly(newton_interpolate(rest), pts[pos].x);

  if (pts[pos].y == at)
    throw DegenerateInputError("tuple is not in general position", {});
  return pts[pos].y < at ? parity_sign(k - i) : parity_sign(k + 1 - i);
}

}  // namespace kmono
