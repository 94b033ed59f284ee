// Random sequences at the monotone and convex thresholds always contain
// the promised subsets; compare with the known bounds.

#include <iostream>
#include <set>

#include "kmono/kmono.hpp"

namespace {

kmono::PointSequence random_points(kmono::Rng& rng, std::size_t n) {
  std::set<kmono::Rational> xs;
  while (xs.size() < n) xs.insert(kmono::Rational(rng.between(-100000, 100000), rng.between(1, 9)));
  std::vector<kmono::PlanarPoint> pts;
  for (const auto& x : xs) pts.push_back({x, kmono::Rational(rng.between(-100000, 100000), rng.between(1, 9))});
  return kmono::PointSequence(std::move(pts));
}

}  // namespace

int main() {
  using namespace kmono;
  Rng rng(7);

  for (std::size_t k = 1; k <= 2; ++k) {
    for (std::size_t n = 4; n <= 6; ++n) {
      const BoundsReport b = known_bounds(k, n);
      const auto size = static_cast<std::size_t>(b.known_upper->get_ui());
      const PointSequence seq = random_points(rng, size);
      try {
        const SearchResult r = longest_kth_order_monotone(seq, k);
        std::cout << "k=" << k << " n=" << n << ": " << size << " points, longest monotone subset "
                  << r.length << "\n";
      } catch (const DegenerateInputError& e) {
        std::cout << "k=" << k << " n=" << n << ": degenerate sample (" << e.what() << ")\n";
      }
    }
  }
}
