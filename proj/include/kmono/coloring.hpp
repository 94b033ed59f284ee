#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "kmono/combinatorics.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/parallel.hpp"
#include "kmono/sign_kernel.hpp"

namespace kmono {

/// Color id, 1 or 2.
using ColorId = std::uint8_t;

inline constexpr ColorId kColorOne = 1;
inline constexpr ColorId kColorTwo = 2;

/// Positive tuples get color 1, negative ones color 2.
inline ColorId color_of_sign(Sign s) {
  if (s == Sign::zero) throw DegenerateInputError("zero sign has no color");
  return s == Sign::positive ? kColorOne : kColorTwo;
}

inline Sign sign_of_color(ColorId c) { return c == kColorOne ? Sign::positive : Sign::negative; }

namespace detail {

/// Memoized tuple colors of a point sequence. Dense colorings keep two bits
/// per tuple (00 = unknown) in an atomic array, so concurrent lazy fills are
/// benign; very large ground sets fall back to a locked hash map.
class GeometricSource {
 public:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 31;

  GeometricSource(PointSequence seq, std::size_t k, std::uint64_t tuple_count)
      : seq_(std::move(seq)), k_(k), kernel_(seq_), tuple_count_(tuple_count) {
    if (tuple_count_ <= kDenseLimit) {
      bytes_ = static_cast<std::size_t>((tuple_count_ + 3) / 4);
      dense_ = std::make_unique<std::atomic<std::uint8_t>[]>(bytes_);
      for (std::size_t i = 0; i < bytes_; ++i) dense_[i].store(0, std::memory_order_relaxed);
    }
  }

  const PointSequence& sequence() const noexcept { return seq_; }
  std::size_t order() const noexcept { return k_; }
  const IntegerSignKernel& kernel() const noexcept { return kernel_; }
  bool dense() const noexcept { return static_cast<bool>(dense_); }

  ColorId lookup(std::uint64_t rank) const noexcept {
    const auto byte = dense_[rank >> 2].load(std::memory_order_relaxed);
    return static_cast<ColorId>((byte >> ((rank & 3) * 2)) & 3);
  }

  void store(std::uint64_t rank, ColorId c) const noexcept {
    dense_[rank >> 2].fetch_or(static_cast<std::uint8_t>(c << ((rank & 3) * 2)),
                               std::memory_order_relaxed);
  }

  ColorId color(std::span<const Index> t, std::uint64_t rank) const {
    if (dense_) {
      if (const auto c = lookup(rank)) return c;
      const ColorId c = compute(t);
      store(rank, c);
      return c;
    }
    {
      std::lock_guard lock(mu_);
      if (auto it = sparse_.find(rank); it != sparse_.end()) return it->second;
    }
    const ColorId c = compute(t);
    std::lock_guard lock(mu_);
    sparse_.emplace(rank, c);
    return c;
  }

  bool materialized() const noexcept { return materialized_.load(); }

  /// Fills the dense memo for every tuple, fanning prefixes over workers.
  void materialize(const BinomialTable& binom, unsigned workers) const {
    if (!dense_ || materialized_.load()) return;
    const std::size_t n = seq_.size();
    const std::size_t l = k_ + 1;
    if (n < l) {
      materialized_ = true;
      return;
    }
    // Prefixes are (l-1)-subsets; slice them by first element, interleaving
    // so that work per worker is roughly even.
    parallel_slices(n, workers, [&](unsigned w, std::size_t, std::size_t) {
      const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
      for (std::size_t first = w; first < n; first += nw) fill_from(first, binom);
    });
    materialized_ = true;
  }

 private:
  ColorId compute(std::span<const Index> t) const {
    const Sign s = kernel_.sign(t);
    if (s == Sign::zero)
      throw DegenerateInputError("tuple is not in general position",
                                 IndexTuple(t.begin(), t.end()));
    return color_of_sign(s);
  }

  void fill_from(std::size_t first, const BinomialTable& binom) const {
    const std::size_t n = seq_.size();
    const std::size_t m = k_;  // prefix length
    IndexTuple prefix(m);
    if (m == 0) return;
    // Prefixes starting exactly at `first`, lexicographic.
    prefix[0] = first;
    for (std::size_t j = 1; j < m; ++j) prefix[j] = first + j;
    if (prefix[m - 1] >= n) return;
    while (true) {
      const std::uint64_t base = colex_rank(prefix, binom);
      if (prefix[m - 1] + 1 < n) {
        kernel_.extend_prefix(prefix, prefix[m - 1] + 1, [&](Index d, Sign s) {
          if (s == Sign::zero) {
            IndexTuple t = prefix;
            t.push_back(d);
            throw DegenerateInputError("tuple is not in general position", std::move(t));
          }
          store(base + binom(d, m + 1), color_of_sign(s));
        });
      }
      // next prefix with the same first element
      std::size_t i = m;
      while (i > 1 && prefix[i - 1] == n - m + i - 1) --i;
      if (i <= 1) break;
      ++prefix[i - 1];
      for (std::size_t j = i; j < m; ++j) prefix[j] = prefix[j - 1] + 1;
    }
  }

  PointSequence seq_;
  std::size_t k_;
  IntegerSignKernel kernel_;
  std::uint64_t tuple_count_;
  std::size_t bytes_ = 0;
  std::unique_ptr<std::atomic<std::uint8_t>[]> dense_;
  mutable std::atomic<bool> materialized_{false};
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, ColorId> sparse_;
};

}  // namespace detail

/// Two-coloring of the l-subsets of [0, N): an explicit table indexed by
/// colex rank, or a lazily evaluated view of the tuple signs of a point
/// sequence (l = k + 1). Copies share state.
class Coloring {
 public:
  /// `colors` in colex-rank order, each 1 or 2.
  static Coloring from_table(std::size_t n, std::size_t arity, std::vector<ColorId> colors) {
    Coloring c(n, arity);
    const auto expected = binomial(n, arity);
    if (colors.size() != expected)
      throw ArityError("coloring table has " + std::to_string(colors.size()) + " entries, expected " +
                       std::to_string(expected));
    for (auto v : colors)
      if (v != kColorOne && v != kColorTwo) throw FormatError("color ids must be 1 or 2");
    c.source_ = std::make_shared<const std::vector<ColorId>>(std::move(colors));
    return c;
  }

  /// Tabulates f(tuple) over all l-subsets.
  template <class F>
  static Coloring from_function(std::size_t n, std::size_t arity, F&& f) {
    std::vector<ColorId> colors(binomial(n, arity));
    BinomialTable b(n, arity);
    for_each_combination(n, arity, [&](std::span<const Index> t) {
      colors[colex_rank(t, b)] = f(t);
      return true;
    });
    return from_table(n, arity, std::move(colors));
  }

  static Coloring constant(std::size_t n, std::size_t arity, ColorId color) {
    return from_table(n, arity, std::vector<ColorId>(binomial(n, arity), color));
  }

  std::size_t ground_size() const noexcept { return n_; }
  std::size_t arity() const noexcept { return arity_; }
  const BinomialTable& binomials() const noexcept { return *binom_; }

  bool is_geometric() const noexcept {
    return std::holds_alternative<std::shared_ptr<detail::GeometricSource>>(source_);
  }

  /// Source sequence of a geometric view, null for tables.
  const PointSequence* sequence() const noexcept {
    if (auto g = std::get_if<std::shared_ptr<detail::GeometricSource>>(&source_))
      return &(*g)->sequence();
    return nullptr;
  }

  /// Color of the subset at strictly increasing indices.
  ColorId color(std::span<const Index> t) const {
    if (t.size() != arity_)
      throw ArityError("expected " + std::to_string(arity_) + " indices, got " +
                       std::to_string(t.size()));
    if (!is_strictly_increasing(t)) throw IndexError("indices must be strictly increasing");
    if (!t.empty() && t.back() >= n_) throw IndexError("index out of range");
    return color_ranked(t, colex_rank(t, *binom_));
  }

  ColorId color(std::initializer_list<Index> t) const {
    return color(std::span<const Index>(t.begin(), t.size()));
  }

  /// Unchecked lookup for hot loops; `rank` must be colex_rank(t).
  ColorId color_ranked(std::span<const Index> t, std::uint64_t rank) const {
    if (auto tab = std::get_if<std::shared_ptr<const std::vector<ColorId>>>(&source_))
      return (**tab)[rank];
    return std::get<std::shared_ptr<detail::GeometricSource>>(source_)->color(t, rank);
  }

  /// Fast path for a geometric view already materialized; 0 if unknown.
  ColorId cached(std::uint64_t rank) const noexcept {
    if (auto tab = std::get_if<std::shared_ptr<const std::vector<ColorId>>>(&source_))
      return (**tab)[rank];
    const auto& g = std::get<std::shared_ptr<detail::GeometricSource>>(source_);
    return g->dense() ? g->lookup(rank) : 0;
  }

  /// Evaluates every color up front. A no-op for tables and for views too
  /// large for the dense memo.
  void materialize(unsigned workers = 1) const {
    if (auto g = std::get_if<std::shared_ptr<detail::GeometricSource>>(&source_))
      (*g)->materialize(*binom_, workers);
  }

  bool fully_cached() const noexcept {
    if (auto g = std::get_if<std::shared_ptr<detail::GeometricSource>>(&source_))
      return (*g)->dense() && (*g)->materialized();
    return true;
  }

  /// Explicit coloring induced on the ordered subset `subset`.
  Coloring restrict_to(std::span<const Index> subset) const {
    if (!is_strictly_increasing(subset)) throw IndexError("restriction indices must increase");
    if (!subset.empty() && subset.back() >= n_) throw IndexError("restriction index out of range");
    IndexTuple mapped(arity_);
    return from_function(subset.size(), arity_, [&](std::span<const Index> t) {
      for (std::size_t j = 0; j < arity_; ++j) mapped[j] = subset[t[j]];
      return color(mapped);
    });
  }

  /// Explicit table with the same colors.
  Coloring to_table() const {
    return from_function(n_, arity_, [&](std::span<const Index> t) { return color(t); });
  }

 private:
  friend Coloring geometric_coloring(const PointSequence&, std::size_t, std::uint64_t);

  Coloring(std::size_t n, std::size_t arity)
      : n_(n), arity_(arity), binom_(std::make_shared<const BinomialTable>(n, arity + 1)) {
    if (arity == 0) throw ArityError("coloring arity must be positive");
  }

  std::size_t n_;
  std::size_t arity_;
  std::shared_ptr<const BinomialTable> binom_;
  std::variant<std::shared_ptr<const std::vector<ColorId>>, std::shared_ptr<detail::GeometricSource>>
      source_;
};

/// Tuple-sign coloring of the (k+1)-subsets of a k-general sequence.
///
/// General position is validated eagerly when there are at most
/// `eager_check_limit` tuples; larger sequences are checked as colors are
/// evaluated, and a zero sign raises DegenerateInputError with the tuple.
inline Coloring geometric_coloring(const PointSequence& seq, std::size_t k,
                                   std::uint64_t eager_check_limit = std::uint64_t{1} << 21) {
  if (k == 0) throw ArityError("geometric coloring needs k >= 1");
  Coloring c(seq.size(), k + 1);
  const std::uint64_t count = c.binomials()(seq.size(), k + 1);
  if (count == std::numeric_limits<std::uint64_t>::max())
    throw BudgetError("too many tuples to index");
  auto src = std::make_shared<detail::GeometricSource>(seq, k, count);
  if (count <= eager_check_limit) {
    for_each_combination(seq.size(), k + 1, [&](std::span<const Index> t) {
      if (src->kernel().sign(t) == Sign::zero)
        throw DegenerateInputError("sequence is not in " + std::to_string(k) + "-general position",
                                   IndexTuple(t.begin(), t.end()));
      return true;
    });
  }
  c.source_ = std::move(src);
  return c;
}

/// A violated transitivity instance: colors of the first and last l-windows
/// of `indices` agree, the color of `offending_subset` differs.
struct TransitivityWitness {
  IndexTuple indices;
  IndexTuple offending_subset;
};

struct TransitivityReport {
  bool transitive = true;
  std::optional<TransitivityWitness> witness;

  explicit operator bool() const noexcept { return transitive; }
};

enum class TransitivityMode {
  full,  // every l-subset of the (l+1)-tuple
  weak,  // only the subsets omitting the 2nd or the 3rd element
};

/// Exhaustive transitivity check over all (l+1)-tuples in lexicographic
/// order; reports the first violation.
inline TransitivityReport is_transitive(const Coloring& c,
                                        TransitivityMode mode = TransitivityMode::full) {
  const std::size_t l = c.arity();
  TransitivityReport rep;
  IndexTuple sub(l);
  for_each_combination(c.ground_size(), l + 1, [&](std::span<const Index> t) {
    const ColorId head = c.color(t.first(l));
    const ColorId tail = c.color(t.last(l));
    if (head != tail) return true;
    const std::size_t last_omit = mode == TransitivityMode::full ? l - 1 : std::min<std::size_t>(2, l - 1);
    for (std::size_t omit = 1; omit <= last_omit; ++omit) {
      for (std::size_t j = 0, o = 0; j <= l; ++j)
        if (j != omit) sub[o++] = t[j];
      if (c.color(sub) != head) {
        rep.transitive = false;
        rep.witness = TransitivityWitness{IndexTuple(t.begin(), t.end()), sub};
        return false;
      }
    }
    return true;
  });
  return rep;
}

}  // namespace kmono
