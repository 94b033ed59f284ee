// Builds the 16-point third-order construction, checks its sign pattern
// and searches for the longest third-order monotone subset.

#include <iostream>

#include "kmono/kmono.hpp"

int main() {
  using namespace kmono;

  const ClusteredSet cs = generate_extremal(3);
  std::cout << "generation " << cs.generation() << ": " << cs.size() << " points, A = " << cs.params.a
            << "\n";
  for (std::size_t i = 0; i < cs.size(); ++i)
    std::cout << "  " << i << "  cluster " << cs.cluster_of[i] << "  (" << cs.points[i].x << ", "
              << cs.points[i].y << ")\n";

  const VerificationReport rep = verify_construction(cs);
  std::cout << "verified " << rep.tuples_checked << " 4-tuples: " << (rep.pass ? "ok" : "FAILED") << "\n";
  for (const auto& [type, count] : rep.type_counts) std::cout << "  " << type << ": " << count << "\n";

  const SearchResult r = longest_kth_order_monotone(cs.points, 3);
  std::cout << "longest third-order monotone subset: " << r.length << " (";
  for (std::size_t i = 0; i < r.indices.size(); ++i) std::cout << (i ? " " : "") << r.indices[i];
  std::cout << ")\n";
  return rep.pass ? 0 : 1;
}
