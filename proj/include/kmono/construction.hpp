#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/parallel.hpp"
#include "kmono/random.hpp"
#include "kmono/rational.hpp"

namespace kmono {

/// Default four-point seed of the construction.
inline PointSequence default_base_set() {
  return PointSequence({{Rational(1), Rational(0)},
                        {Rational(13, 10), Rational(1)},
                        {Rational(8, 5), Rational(1, 10)},
                        {Rational(19, 10), Rational(9, 10)}});
}

inline const Rational& box_left() {
  static const Rational v(1);
  return v;
}
inline const Rational& box_right() {
  static const Rational v(19, 10);
  return v;
}

struct ConstructionParams {
  std::size_t generation = 2;
  Rational a;        // parabola coefficient of the last step; 0 for the seed
  Rational epsilon;  // 1 / a^2; 0 for the seed
  PointSequence base_set;
};

/// A generation of the clustered construction. Generation n has
/// 2^(2^(n-1)) points; for n > 2 every point belongs to the cluster of one
/// parent point, clusters are x-contiguous copies of the parent set, and
/// `parent` links back to the previous generation.
struct ClusteredSet {
  PointSequence points;
  std::vector<std::size_t> cluster_of;      // point -> cluster id
  std::vector<std::size_t> cluster_anchor;  // cluster id -> parent point index
  ConstructionParams params;
  std::shared_ptr<const ClusteredSet> parent;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t generation() const noexcept { return params.generation; }
};

/// Ordered composition of 4 describing how a 4-tuple spreads over clusters.
struct TupleType {
  std::vector<std::size_t> parts;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += '+';
      s += std::to_string(parts[i]);
    }
    return s;
  }

  friend bool operator==(const TupleType&, const TupleType&) = default;
};

inline TupleType tuple_type(const ClusteredSet& cs, std::span<const Index> idx) {
  TupleType t;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= cs.size()) throw IndexError("tuple index out of range");
    if (i > 0 && cs.cluster_of[idx[i]] == cs.cluster_of[idx[i - 1]])
      ++t.parts.back();
    else
      t.parts.push_back(1);
  }
  return t;
}

/// Sign forced by the type of a 4-tuple; nullopt for types 4 and 1+1+1+1,
/// whose sign is that of the corresponding parent tuple.
inline std::optional<Sign> expected_sign_by_type(const TupleType& t) {
  using P = std::vector<std::size_t>;
  const P& p = t.parts;
  if (p == P{4} || p == P{1, 1, 1, 1}) return std::nullopt;
  if (p == P{3, 1} || p == P{1, 3}) return Sign::negative;
  if (p == P{1, 1, 2} || p == P{2, 1, 1}) return Sign::positive;
  if (p == P{1, 2, 1}) return Sign::negative;
  if (p == P{2, 2}) return Sign::positive;
  throw ArityError("not a composition of 4: " + t.str());
}

/// Sign a 4-tuple of `cs` must have, with inherited types resolved through
/// the parent chain; at the seed it is the tuple's own sign.
inline Sign expected_sign(const ClusteredSet& cs, std::span<const Index> idx) {
  if (!cs.parent) return tuple_sign(cs.points.select(idx), 3);
  const TupleType t = tuple_type(cs, idx);
  if (auto s = expected_sign_by_type(t)) return *s;
  const std::size_t m = cs.parent->size();
  IndexTuple up(4);
  if (t.parts.size() == 1) {
    const std::size_t first = cs.cluster_of[idx[0]] * m;
    for (std::size_t j = 0; j < 4; ++j) up[j] = idx[j] - first;
  } else {
    for (std::size_t j = 0; j < 4; ++j) up[j] = cs.cluster_anchor[cs.cluster_of[idx[j]]];
  }
  return expected_sign(*cs.parent, up);
}

enum class VerifyMode { exhaustive, sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t max_witnesses = 16;
  std::size_t slope_samples = 2000;  // per line family when not enumerated
};

struct SignWitness {
  IndexTuple indices;
  std::string type;
  Sign expected = Sign::zero;
  Sign actual = Sign::zero;
};

struct SlopeReport {
  Rational max_cross;  // largest slope of any cross-cluster line/parabola
  Rational min_intra;  // smallest slope of any single-cluster line/parabola
  std::uint64_t curves_checked = 0;
  bool pass = true;
};

struct VerificationReport {
  std::size_t generation = 0;
  std::size_t points = 0;
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t zero_signs = 0;
  std::uint64_t mismatches = 0;
  bool clusters_ok = true;
  std::string cluster_error;
  std::optional<SlopeReport> slopes;  // absent at the seed generation
  std::map<std::string, std::uint64_t> type_counts;
  std::vector<SignWitness> witnesses;  // zero signs and mismatches, earliest first
  bool pass = false;
};

namespace detail {

inline bool check_clusters(const ClusteredSet& cs, std::string& why) {
  const std::size_t n = cs.size();
  if (cs.cluster_of.size() != n) {
    why = "cluster_of has wrong length";
    return false;
  }
  if (!cs.parent) return true;
  const std::size_t m = cs.parent->size();
  if (n != m * m) {
    why = "size is not the square of the parent size";
    return false;
  }
  if (cs.cluster_anchor.size() != m) {
    why = "cluster_anchor has wrong length";
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cs.cluster_of[i] != i / m) {
      why = "clusters are not contiguous blocks of the parent size (point " + std::to_string(i) + ")";
      return false;
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    if (cs.cluster_anchor[c] != c) {
      why = "cluster anchors out of order";
      return false;
    }
    if (c + 1 < m && !(cs.points[c * m + m - 1].x < cs.points[(c + 1) * m].x)) {
      why = "clusters " + std::to_string(c) + " and " + std::to_string(c + 1) + " overlap in x";
      return false;
    }
  }
  return true;
}

/// Slope extremes over [lo, hi] of the interpolant through 2 or 3 points.
inline std::pair<Rational, Rational> slope_range(std::span<const PlanarPoint> pts, const Rational& lo,
                                                 const Rational& hi) {
  const Rational d1 = (pts[1].y - pts[0].y) / (pts[1].x - pts[0].x);
  if (pts.size() == 2) return {d1, d1};
  const Rational d1b = (pts[2].y - pts[1].y) / (pts[2].x - pts[1].x);
  const Rational d2 = (d1b - d1) / (pts[2].x - pts[0].x);
  const Rational s_lo = d1 + d2 * (lo + lo - pts[0].x - pts[1].x);
  const Rational s_hi = d1 + d2 * (hi + hi - pts[0].x - pts[1].x);
  return s_lo < s_hi ? std::pair{s_lo, s_hi} : std::pair{s_hi, s_lo};
}

inline SlopeReport check_slopes(const ClusteredSet& cs, std::uint64_t seed, std::size_t samples) {
  SlopeReport rep;
  const std::size_t m = cs.parent->size();
  const std::size_t n = cs.size();
  bool have_cross = false, have_intra = false;
  auto absorb = [&](std::span<const Index> idx, bool intra) {
    const auto pts = cs.points.select(idx);
    const auto [lo, hi] = slope_range(pts, box_left(), box_right());
    ++rep.curves_checked;
    if (intra) {
      if (!have_intra || lo < rep.min_intra) rep.min_intra = lo;
      have_intra = true;
    } else {
      if (!have_cross || hi > rep.max_cross) rep.max_cross = hi;
      have_cross = true;
    }
  };
  auto distinct_clusters = [&](std::span<const Index> idx) {
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (cs.cluster_of[idx[i]] == cs.cluster_of[idx[i - 1]]) return false;
    return true;
  };
  auto same_cluster = [&](std::span<const Index> idx) {
    return cs.cluster_of[idx.front()] == cs.cluster_of[idx.back()];
  };

  for (std::size_t width : {2u, 3u}) {
    if (binomial(n, width) <= samples) {
      for_each_combination(n, width, [&](std::span<const Index> t) {
        if (same_cluster(t)) absorb(t, true);
        else if (distinct_clusters(t)) absorb(t, false);
        return true;
      });
      continue;
    }
    Rng rng(seed ^ (0x51ed270b27e8a1c3ULL * width));
    for (std::size_t s = 0; s < samples; ++s) {
      // intra: one cluster, `width` positions
      IndexTuple pos = rng.subset(m, width);
      const std::size_t c = rng.below(m);
      for (auto& p : pos) p += c * m;
      absorb(pos, true);
      // cross: `width` clusters, one position in each
      IndexTuple cl = rng.subset(m, width);
      for (auto& q : cl) q = q * m + rng.below(m);
      absorb(cl, false);
    }
  }
  rep.pass = have_cross && have_intra && rep.max_cross < rep.min_intra;
  return rep;
}

}  // namespace detail

/// Checks a generation against the sign-by-type table: general position,
/// every checked 4-tuple's sign equals expected_sign, cluster layout, and
/// separation between cross-cluster and single-cluster slopes.
inline VerificationReport verify_construction(const ClusteredSet& cs, const VerifyOptions& opt = {}) {
  VerificationReport rep;
  rep.generation = cs.generation();
  rep.points = cs.size();
  rep.mode = opt.mode;
  rep.samples = opt.mode == VerifyMode::sampled ? opt.samples : 0;
  rep.seed = opt.seed;
  rep.clusters_ok = detail::check_clusters(cs, rep.cluster_error);

  const std::size_t n = cs.size();
  std::vector<IndexTuple> drawn;
  std::uint64_t count = 0;
  if (opt.mode == VerifyMode::sampled) {
    if (n >= 4) {
      Rng rng(opt.seed);
      drawn.reserve(opt.samples);
      for (std::uint64_t s = 0; s < opt.samples; ++s) drawn.push_back(rng.subset(n, 4));
    }
    count = drawn.size();
  } else {
    count = binomial(n, 4);
  }

  struct Partial {
    std::uint64_t checked = 0, zeros = 0, mismatches = 0;
    std::map<std::string, std::uint64_t> types;
    std::vector<std::pair<std::uint64_t, SignWitness>> witnesses;
  };
  const unsigned workers = std::max(1u, opt.workers);
  std::vector<Partial> parts(workers);
  const BinomialTable binom(n, 4);

  if (rep.clusters_ok) {
    parallel_slices(count, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
      Partial& part = parts[w];
      auto check = [&](std::uint64_t order, std::span<const Index> t) {
        const Sign actual = tuple_sign(cs.points.select(t), 3);
        const Sign expected = expected_sign(cs, t);
        const std::string type = cs.parent ? tuple_type(cs, t).str() : "seed";
        ++part.checked;
        ++part.types[type];
        const bool zero = actual == Sign::zero;
        if (zero) ++part.zeros;
        if (!zero && actual != expected) ++part.mismatches;
        if ((zero || actual != expected) && part.witnesses.size() < opt.max_witnesses)
          part.witnesses.push_back({order, {IndexTuple(t.begin(), t.end()), type, expected, actual}});
      };
      if (opt.mode == VerifyMode::sampled) {
        for (std::size_t i = begin; i < end; ++i) check(i, drawn[i]);
      } else if (begin < end) {
        // Lexicographic enumeration; slice boundaries by position in that order.
        IndexTuple t = first_combination(4);
        std::uint64_t pos = 0;
        // Skip to `begin` by enumerating; slices are contiguous so the skip
        // cost is at most one pass per worker.
        while (pos < begin && next_combination(t, n)) ++pos;
        for (; pos < end; ++pos) {
          check(pos, t);
          if (!next_combination(t, n)) break;
        }
      }
    });
  }

  std::vector<std::pair<std::uint64_t, SignWitness>> all;
  for (auto& p : parts) {
    rep.tuples_checked += p.checked;
    rep.zero_signs += p.zeros;
    rep.mismatches += p.mismatches;
    for (auto& [k, v] : p.types) rep.type_counts[k] += v;
    for (auto& w : p.witnesses) all.push_back(std::move(w));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < all.size() && i < opt.max_witnesses; ++i)
    rep.witnesses.push_back(std::move(all[i].second));

  if (cs.parent && rep.clusters_ok) rep.slopes = detail::check_slopes(cs, opt.seed, opt.slope_samples);

  rep.pass = rep.clusters_ok && rep.zero_signs == 0 && rep.mismatches == 0 &&
             (!rep.slopes || rep.slopes->pass);
  return rep;
}

struct GenerateOptions {
  PointSequence base_set = default_base_set();
  Rational initial_a = Rational(1024);
  std::size_t max_doublings = 48;
  std::size_t max_points = 256;
  /// Candidate generations with at most this many 4-tuples are verified
  /// exhaustively while choosing A; larger ones by `selection_samples`
  /// seeded samples.
  std::uint64_t exhaustive_limit = 2'000'000;
  std::uint64_t selection_samples = 20'000;
  std::uint64_t selection_seed = 1;
  /// Sampled selection also draws this many 1+1+1+1 tuples over every
  /// parent 4-tuple. Uniform samples rarely land over parent tuples of
  /// type 4, which are the last to settle as A grows.
  std::uint64_t per_parent_samples = 64;
  unsigned workers = 1;
};

inline void validate_base_set(const PointSequence& base) {
  if (base.size() != 4) throw ConstructionError("base set must have 4 points");
  for (const auto& p : base) {
    if (p.x < box_left() || p.x > box_right() || p.y < Rational(0) || p.y > Rational(1))
      throw ConstructionError("base set must lie in [1, 19/10] x [0, 1]");
  }
  if (auto gp = is_k_general_position(base, 3); !gp)
    throw ConstructionError("base set is not in 3-general position");
}

namespace detail {

/// One construction step with a fixed A; nullopt if the points come out of
/// x-order (A too small for the clusters to separate).
inline std::optional<ClusteredSet> grow(const std::shared_ptr<const ClusteredSet>& parent,
                                        const Rational& a) {
  const PointSequence& p = parent->points;
  const std::size_t m = p.size();
  const Rational eps = Rational(1) / (a * a);
  const Rational eps2 = eps * eps;
  std::vector<PlanarPoint> raw;
  raw.reserve(m * m);
  for (std::size_t c = 0; c < m; ++c) {
    const Rational& x0 = p[c].x;
    const Rational& y0 = p[c].y;
    const Rational shift0 = a * x0 * x0;
    for (std::size_t j = 0; j < m; ++j) {
      // [1,2]x[0,1] -> eps x eps^2 box with lower-left corner at p_c ...
      const Rational x = eps * (p[j].x - Rational(1)) + x0;
      Rational y = eps2 * p[j].y + y0;
      // ... then lift by psi(x) = A x^2 + C with psi(x0) = 0.
      y += a * x * x - shift0;
      raw.push_back({x, y});
    }
  }
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (!(raw[i - 1].x < raw[i].x)) return std::nullopt;

  // Axis-aligned renormalization of the bounding box onto [1, 19/10] x [0, 1].
  Rational xmin = raw.front().x, xmax = raw.back().x;
  Rational ymin = raw.front().y, ymax = raw.front().y;
  for (const auto& q : raw) {
    if (q.y < ymin) ymin = q.y;
    if (q.y > ymax) ymax = q.y;
  }
  const Rational sx = (box_right() - box_left()) / (xmax - xmin);
  const Rational sy = Rational(1) / (ymax - ymin);
  for (auto& q : raw) {
    q.x = box_left() + (q.x - xmin) * sx;
    q.y = (q.y - ymin) * sy;
  }

  ClusteredSet cs;
  cs.points = PointSequence(std::move(raw));
  cs.cluster_of.resize(m * m);
  for (std::size_t i = 0; i < m * m; ++i) cs.cluster_of[i] = i / m;
  cs.cluster_anchor.resize(m);
  for (std::size_t c = 0; c < m; ++c) cs.cluster_anchor[c] = c;
  cs.params.generation = parent->generation() + 1;
  cs.params.a = a;
  cs.params.epsilon = eps;
  cs.params.base_set = parent->params.base_set;
  cs.parent = parent;
  return cs;
}

/// Spread tuples: one random point in each of the four clusters over every
/// parent 4-tuple, compared against the parent's expected sign.
inline bool spread_tuples_ok(const ClusteredSet& cs, std::uint64_t per_parent, std::uint64_t seed,
                             unsigned workers) {
  const ClusteredSet& par = *cs.parent;
  const std::size_t m = par.size();
  const std::uint64_t parents = binomial(m, 4);
  const unsigned w = std::max(1u, workers);
  std::vector<char> ok(w, 1);
  parallel_slices(parents, w, [&](unsigned worker, std::size_t begin, std::size_t end) {
    const BinomialTable b(m, 4);
    IndexTuple t(4);
    for (std::size_t r = begin; r < end && ok[worker]; ++r) {
      const IndexTuple up = colex_unrank(r, 4, b);
      const Sign want = expected_sign(par, up);
      Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
      for (std::uint64_t s = 0; s < per_parent; ++s) {
        for (std::size_t j = 0; j < 4; ++j) t[j] = up[j] * m + rng.below(m);
        if (tuple_sign(cs.points.select(t), 3) != want) {
          ok[worker] = 0;
          break;
        }
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; });
}

}  // namespace detail

inline ClusteredSet seed_generation(const PointSequence& base) {
  validate_base_set(base);
  ClusteredSet cs;
  cs.points = base;
  cs.cluster_of = {0, 1, 2, 3};
  cs.cluster_anchor = {0, 1, 2, 3};
  cs.params.generation = 2;
  cs.params.base_set = base;
  return cs;
}

/// Generation n of the clustered construction (2^(2^(n-1)) points). Each
/// step starts at opt.initial_a and doubles A until the candidate passes
/// verify_construction.
inline ClusteredSet generate_extremal(std::size_t n, const GenerateOptions& opt = {}) {
  if (n < 2) throw std::invalid_argument("generation must be >= 2");
  // 2^(2^(n-1)) points
  if (n - 1 >= 6 || (std::uint64_t{1} << (std::uint64_t{1} << (n - 1))) > opt.max_points)
    throw BudgetError("generation " + std::to_string(n) + " exceeds the point budget of " +
                      std::to_string(opt.max_points));
  auto current = std::make_shared<const ClusteredSet>(seed_generation(opt.base_set));
  for (std::size_t g = 3; g <= n; ++g) {
    Rational a = opt.initial_a;
    std::optional<ClusteredSet> accepted;
    for (std::size_t attempt = 0; attempt <= opt.max_doublings && !accepted; ++attempt, a *= Rational(2)) {
      auto cand = detail::grow(current, a);
      if (!cand) continue;
      VerifyOptions vo;
      vo.workers = opt.workers;
      vo.max_witnesses = 1;
      vo.seed = opt.selection_seed;
      const std::uint64_t tuples = binomial(cand->size(), 4);
      if (tuples > opt.exhaustive_limit) {
        vo.mode = VerifyMode::sampled;
        vo.samples = opt.selection_samples;
      }
      if (!verify_construction(*cand, vo).pass) continue;
      if (vo.mode == VerifyMode::sampled &&
          !detail::spread_tuples_ok(*cand, opt.per_parent_samples, opt.selection_seed, opt.workers))
        continue;
      accepted = std::move(cand);
    }
    if (!accepted)
      throw ConstructionError("no admissible A found for generation " + std::to_string(g));
    current = std::make_shared<const ClusteredSet>(std::move(*accepted));
  }
  return *current;
}

}  // namespace kmono
