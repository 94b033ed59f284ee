#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kmono/bounds.hpp"
#include "kmono/coloring.hpp"
#include "kmono/combinatorics.hpp"
#include "kmono/monotone_search.hpp"

namespace kmono {

/// Bookkeeping for one arity level of the extraction.
struct ExtractionLevel {
  std::size_t arity = 0;
  std::size_t ground_size = 0;
  IndexTuple kept;              // A, in indices of this level's ground set
  std::optional<Index> pivot;   // x, the element appended to every k-tuple of A
  std::vector<std::size_t> class_counts;  // equivalence classes seen per step
  std::vector<std::size_t> remaining;     // |X_i| after each step
};

struct ExtractionResult {
  SearchResult result;
  std::size_t target = 0;
  bool shortfall = false;   // result.length < target
  bool guaranteed = false;  // ground size reached the recurrence threshold
  std::vector<ExtractionLevel> levels;
};

/// chi*(K) = chi(K + {pivot}) on the k-subsets of `kept` (relabelled
/// 0..|kept|-1). `kept` must precede `pivot`.
inline Coloring derived_coloring(const Coloring& chi, std::span<const Index> kept, Index pivot) {
  const std::size_t k = chi.arity() - 1;
  if (k < 1) throw ArityError("derived coloring needs arity >= 2");
  if (!kept.empty() && kept.back() >= pivot) throw IndexError("pivot must follow the kept set");
  IndexTuple full(k + 1);
  return Coloring::from_function(kept.size(), k, [&](std::span<const Index> t) {
    for (std::size_t j = 0; j < k; ++j) full[j] = kept[t[j]];
    full[k] = pivot;
    return chi.color(full);
  });
}

namespace detail {

/// One Erdős–Rado level on ground set [0, N) of an arity-(k+1) coloring:
/// grows A from {0..k-2}, each time moving the least element x_i of X into
/// A and keeping the largest class of X \ {x_i} under
/// y ~ z  iff  chi(K + {x_i, y}) = chi(K + {x_i, z}) for all (k-1)-subsets
/// K of A before x_i joined. Ties go to the class with the smallest element.
inline ExtractionLevel erdos_rado_level(const Coloring& chi) {
  const std::size_t n = chi.ground_size();
  const std::size_t k = chi.arity() - 1;
  ExtractionLevel lvl;
  lvl.arity = chi.arity();
  lvl.ground_size = n;
  for (Index i = 0; i + 1 < k && i < n; ++i) lvl.kept.push_back(i);
  IndexTuple x_set;
  for (Index i = lvl.kept.size(); i < n; ++i) x_set.push_back(i);

  IndexTuple tuple(k + 1);
  while (x_set.size() >= 2) {
    const Index xi = x_set.front();
    const IndexTuple before = lvl.kept;
    lvl.kept.push_back(xi);

    std::map<std::vector<ColorId>, IndexTuple> classes;
    for (std::size_t pos = 1; pos < x_set.size(); ++pos) {
      const Index y = x_set[pos];
      std::vector<ColorId> key;
      for_each_combination(before.size(), k - 1, [&](std::span<const Index> t) {
        for (std::size_t j = 0; j + 1 < k; ++j) tuple[j] = before[t[j]];
        tuple[k - 1] = xi;
        tuple[k] = y;
        key.push_back(chi.color(tuple));
        return true;
      });
      classes[std::move(key)].push_back(y);
    }
    const IndexTuple* pick = nullptr;
    for (const auto& [key, members] : classes) {
      if (!pick || members.size() > pick->size() ||
          (members.size() == pick->size() && members.front() < pick->front()))
        pick = &members;
    }
    lvl.class_counts.push_back(classes.size());
    x_set = *pick;
    lvl.remaining.push_back(x_set.size());
  }
  if (!x_set.empty()) lvl.pivot = x_set.front();
  return lvl;
}

}  // namespace detail

/// Homogeneous set extraction following the Erdős–Rado induction for
/// transitive colorings of arity k+1 >= 3. Arity 3 is solved by the path
/// search; higher arities shrink to the derived coloring on A and recurse.
/// The procedure runs at any ground size; `shortfall` flags results
/// below `target`, and the returned set is homogeneous either way when the
/// input is transitive.
inline ExtractionResult erdos_rado_extract(const Coloring& chi, std::size_t target) {
  if (chi.arity() < 3) throw ArityError("extraction needs arity >= 3");
  ExtractionResult out;
  out.target = target;
  try {
    if (target >= 2)
      out.guaranteed = BigInt(static_cast<unsigned long>(chi.ground_size())) >=
                       transitive_ramsey_upper(chi.arity(), target);
  } catch (const BudgetError&) {
    out.guaranteed = false;
  }

  if (chi.arity() == 3) {
    out.result = longest_monochromatic_path(chi);
  } else {
    ExtractionLevel lvl = detail::erdos_rado_level(chi);
    if (!lvl.pivot) {
      // Ground set too small to pick a pivot: A itself is vacuously homogeneous.
      out.result.indices = lvl.kept;
      out.result.length = lvl.kept.size();
      out.levels.push_back(std::move(lvl));
    } else {
      const Coloring star = derived_coloring(chi, lvl.kept, *lvl.pivot);
      ExtractionResult inner = erdos_rado_extract(star, target);
      out.result.length = inner.result.length;
      out.result.color = inner.result.color;
      for (Index i : inner.result.indices) out.result.indices.push_back(lvl.kept[i]);
      out.levels.push_back(std::move(lvl));
      for (auto& l : inner.levels) {
        for (auto& v : l.kept) v = out.levels.front().kept[v];
        if (l.pivot) l.pivot = out.levels.front().kept[*l.pivot];
        out.levels.push_back(std::move(l));
      }
    }
  }
  out.shortfall = out.result.length < target;
  return out;
}

}  // namespace kmono
