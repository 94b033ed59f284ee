#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kmono/coloring.hpp"
#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/linalg.hpp"
#include "kmono/monotone_search.hpp"

namespace kmono {

/// A point of R^d obtained as (x, x^2, ..., x^(d-1), y).
struct LiftedPoint {
  std::vector<Rational> coords;

  friend bool operator==(const LiftedPoint&, const LiftedPoint&) = default;
};

inline LiftedPoint lift_point(const PlanarPoint& p, std::size_t d) {
  if (d < 1) throw std::invalid_argument("lift dimension must be >= 1");
  LiftedPoint out;
  out.coords.reserve(d);
  Rational pw = p.x;
  for (std::size_t j = 1; j < d; ++j) {
    out.coords.push_back(pw);
    pw *= p.x;
  }
  out.coords.push_back(p.y);
  return out;
}

/// Orientation of d+1 points of R^d: sign of det M with j-th column (1, q_j).
inline Sign order_type_sign(std::span<const std::vector<Rational>> pts) {
  if (pts.empty()) throw ArityError("order type of an empty tuple");
  const std::size_t d = pts.size() - 1;
  Matrix m(d + 1, d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    if (pts[j].size() != d)
      throw ArityError("order type needs d+1 points of dimension d = " + std::to_string(d));
    m(0, j) = Rational(1);
    for (std::size_t i = 0; i < d; ++i) m(i + 1, j) = pts[j][i];
  }
  return determinant(m).sign();
}

inline Sign order_type_sign(std::span<const LiftedPoint> pts) {
  std::vector<std::vector<Rational>> raw;
  raw.reserve(pts.size());
  for (const auto& p : pts) raw.push_back(p.coords);
  return order_type_sign(std::span<const std::vector<Rational>>(raw));
}

/// tuple_sign(tuple, d) equals the orientation of the lifted tuple in R^d.
inline bool verify_lift_identity(const PointSequence& seq, std::size_t d, std::span<const Index> idx) {
  if (idx.size() != d + 1) throw ArityError("lift identity needs d+1 indices");
  const auto pts = seq.select(idx);
  std::vector<LiftedPoint> lifted;
  lifted.reserve(pts.size());
  for (const auto& p : pts) lifted.push_back(lift_point(p, d));
  return tuple_sign(pts, d) == order_type_sign(std::span<const LiftedPoint>(lifted));
}

/// sum_j coefficients[j] * xi_j = rhs.
struct Hyperplane {
  std::vector<Rational> coefficients;
  Rational rhs;

  std::size_t dimension() const noexcept { return coefficients.size(); }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// sum_{j=1}^d x^(j-1) xi_j = y
inline Hyperplane hyperplane_from_point(const PlanarPoint& p, std::size_t d) {
  if (d < 2) throw std::invalid_argument("hyperplane dimension must be >= 2");
  Hyperplane h;
  h.coefficients.reserve(d);
  Rational pw(1);
  for (std::size_t j = 0; j < d; ++j) {
    h.coefficients.push_back(pw);
    pw *= p.x;
  }
  h.rhs = p.y;
  return h;
}

/// Common point of d hyperplanes in R^d.
inline std::vector<Rational> vertex_of_hyperplanes(std::span<const Hyperplane> hs) {
  const std::size_t d = hs.size();
  if (d == 0) throw ArityError("no hyperplanes");
  Matrix m(d, d);
  std::vector<Rational> rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (hs[i].dimension() != d) throw ArityError("need d hyperplanes in R^d");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = hs[i].coefficients[j];
    rhs[i] = hs[i].rhs;
  }
  try {
    return solve_linear(m, rhs);
  } catch (const SingularMatrixError&) {
    throw DegenerateInputError("hyperplanes are not in general position");
  }
}

struct HyperplaneFamily {
  std::vector<Hyperplane> hyperplanes;
  std::optional<PointSequence> source;

  std::size_t size() const noexcept { return hyperplanes.size(); }
  std::size_t dimension() const noexcept {
    return hyperplanes.empty() ? 0 : hyperplanes.front().dimension();
  }

  static HyperplaneFamily from_sequence(const PointSequence& seq, std::size_t d) {
    HyperplaneFamily f;
    f.hyperplanes.reserve(seq.size());
    for (const auto& p : seq) f.hyperplanes.push_back(hyperplane_from_point(p, d));
    f.source = seq;
    return f;
  }
};

/// Sign of the last coordinate of the vertex of the hyperplanes at `idx`.
inline Sign vertex_side(const HyperplaneFamily& fam, std::span<const Index> idx) {
  std::vector<Hyperplane> hs;
  hs.reserve(idx.size());
  for (auto i : idx) hs.push_back(fam.hyperplanes.at(i));
  const Sign s = vertex_of_hyperplanes(hs).back().sign();
  if (s == Sign::zero)
    throw DegenerateInputError("arrangement vertex on x_d = 0", IndexTuple(idx.begin(), idx.end()));
  return s;
}

struct OneSidedReport {
  bool one_sided = true;
  std::optional<Sign> side;          // side of every vertex when one-sided and nonempty
  std::optional<IndexTuple> witness; // first d-subset on the other side
};

/// Direct check: every d-wise vertex of the subfamily `subset` lies strictly
/// on one side of x_d = 0.
inline OneSidedReport is_one_sided(const HyperplaneFamily& fam, std::span<const Index> subset) {
  const std::size_t d = fam.dimension();
  OneSidedReport rep;
  IndexTuple pick(d);
  for_each_combination(subset.size(), d, [&](std::span<const Index> t) {
    for (std::size_t j = 0; j < d; ++j) pick[j] = subset[t[j]];
    const Sign s = vertex_side(fam, pick);
    if (!rep.side) rep.side = s;
    if (s != *rep.side) {
      rep.one_sided = false;
      rep.witness = pick;
      rep.side.reset();
      return false;
    }
    return true;
  });
  return rep;
}

/// Largest one-sided subfamily of a family built from a point sequence, via
/// its (d-1)-th order monotone subsets. Color 1 means vertices above x_d = 0.
inline SearchResult max_one_sided_subset(const HyperplaneFamily& fam) {
  if (!fam.source) throw std::invalid_argument("hyperplane family has no source sequence");
  const std::size_t d = fam.dimension();
  if (d < 2) throw ArityError("hyperplane families need d >= 2");
  return longest_kth_order_monotone(*fam.source, d - 1);
}

/// Coloring of the d-subsets of a family by vertex side, computed by
/// solving every d x d system.
inline Coloring vertex_side_coloring(const HyperplaneFamily& fam) {
  return Coloring::from_function(fam.size(), fam.dimension(), [&](std::span<const Index> t) {
    return color_of_sign(vertex_side(fam, t));
  });
}

/// Largest one-sided subfamily by enumeration over subfamilies.
inline SearchResult max_one_sided_bruteforce(const HyperplaneFamily& fam, std::size_t cap = 16) {
  return largest_homogeneous_bruteforce(vertex_side_coloring(fam), cap);
}

/// Largest order-type homogeneous subsequence of points in R^d by
/// enumeration (order-type colorings are not transitive, so there is no
/// path shortcut).
inline SearchResult largest_order_type_homogeneous(std::span<const std::vector<Rational>> pts,
                                                   std::size_t cap = 14) {
  if (pts.empty()) return {};
  if (pts.size() > cap)
    throw BudgetError("order-type search limited to " + std::to_string(cap) + " points");
  const std::size_t d = pts.front().size();
  std::vector<std::vector<Rational>> buf(d + 1);
  const Coloring c = Coloring::from_function(pts.size(), d + 1, [&](std::span<const Index> t) {
    for (std::size_t j = 0; j <= d; ++j) buf[j] = pts[t[j]];
    const Sign s = order_type_sign(std::span<const std::vector<Rational>>(buf));
    if (s == Sign::zero)
      throw DegenerateInputError("points are not in general position", IndexTuple(t.begin(), t.end()));
    return color_of_sign(s);
  });
  return largest_homogeneous_bruteforce(c, cap);
}

}  // namespace kmono
