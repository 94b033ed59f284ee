// Acceptance run: one PASS/FAIL line per criterion. Seeds, sample counts
// and time budgets are fixed below. JSON reports carry no timings so that
// two runs with the same seeds can be compared byte for byte.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmono/json_io.hpp"
#include "kmono/kmono.hpp"
#include "support/instances.hpp"

using namespace kmono;
using json = nlohmann::json;
using kmono::testing::block_sequence;
using kmono::testing::random_general_sequence;
using kmono::testing::random_sequence;
using kmono::testing::random_wide_general_sequence;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string summary;
  json report = json::object();
  // Sub-phase timings with their own budgets; checked in addition to the
  // criterion total.
  std::vector<std::tuple<std::string, double, double>> phases;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0: no wall-clock budget
  std::function<Outcome(unsigned)> run;
};

json indices(const IndexTuple& t) { return json(t); }

// ---------------------------------------------------------------- 1

Outcome oracle_equivalence(unsigned) {
  Outcome o;
  Rng rng(1001);
  constexpr int kCases = 210;
  int mismatches = 0;
  json cases = json::array();
  for (int i = 0; i < kCases; ++i) {
    const std::size_t k = 1 + static_cast<std::size_t>(i % 3);
    const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(k) + 2, 11));
    const PointSequence seq = random_general_sequence(rng, n, k);
    const Coloring c = geometric_coloring(seq, k);
    const SearchResult dp = longest_monochromatic_path(c);
    const SearchResult bf = largest_homogeneous_bruteforce(c);
    const bool ok = dp.length == bf.length && is_homogeneous(c, dp.indices);
    if (!ok) ++mismatches;
    cases.push_back({{"k", k}, {"n", n}, {"dp", dp.length}, {"bruteforce", bf.length}, {"dp_indices", indices(dp.indices)}});
  }
  o.pass = mismatches == 0;
  o.summary = std::to_string(kCases - mismatches) + "/" + std::to_string(kCases) + " sequences with DP = brute force";
  o.report = {{"seed", 1001}, {"cases", cases}, {"mismatches", mismatches}};
  return o;
}

// ---------------------------------------------------------------- 2

Outcome monotone_threshold(unsigned) {
  Outcome o;
  Rng rng(2002);
  int exceptions = 0, block_failures = 0;
  json rows = json::array();
  for (std::size_t n = 3; n <= 20; ++n) {
    const std::size_t size = (n - 1) * (n - 1) + 1;
    std::size_t min_len = size;
    for (int trial = 0; trial < 100; ++trial) {
      const PointSequence seq = random_wide_general_sequence(rng, size, 1);
      const Coloring c = geometric_coloring(seq, 1);
      const SearchResult r = longest_monochromatic_path(c);
      if (r.length < n || !is_homogeneous(c, r.indices)) ++exceptions;
      min_len = std::min(min_len, r.length);
    }
    const std::size_t block = longest_kth_order_monotone(block_sequence(n - 1), 1).length;
    if (block != n - 1) ++block_failures;
    rows.push_back({{"n", n}, {"size", size}, {"min_length", min_len}, {"block_size", (n - 1) * (n - 1)},
                    {"block_length", block}});
  }
  o.pass = exceptions == 0 && block_failures == 0;
  o.summary = "1800 sequences, " + std::to_string(exceptions) + " exceptions; block sizes exact in " +
              std::to_string(18 - block_failures) + "/18";
  o.report = {{"seed", 2002}, {"rows", rows}, {"exceptions", exceptions}, {"block_failures", block_failures}};
  return o;
}

// ---------------------------------------------------------------- 3

Outcome convex_threshold(unsigned) {
  Outcome o;
  Rng rng(3003);
  int exceptions = 0;
  json rows = json::array();
  for (std::size_t n = 4; n <= 6; ++n) {
    const std::size_t size = static_cast<std::size_t>(binomial(2 * n - 4, n - 2)) + 1;
    std::size_t min_len = size;
    for (int trial = 0; trial < 100; ++trial) {
      const PointSequence seq = random_wide_general_sequence(rng, size, 2);
      const Coloring c = geometric_coloring(seq, 2);
      const SearchResult r = longest_monochromatic_path(c);
      if (r.length < n || !is_homogeneous(c, r.indices)) ++exceptions;
      min_len = std::min(min_len, r.length);
    }
    rows.push_back({{"n", n}, {"size", size}, {"min_length", min_len}});
  }
  o.pass = exceptions == 0;
  o.summary = "300 sequences, " + std::to_string(exceptions) + " exceptions";
  o.report = {{"seed", 3003}, {"rows", rows}, {"exceptions", exceptions}};
  return o;
}

// ---------------------------------------------------------------- 4

// Expected sign from the type table, falling back to the parent for types
// 4 and 1+1+1+1.
Sign table_sign(const ClusteredSet& cs, std::span<const Index> t) {
  const TupleType type = tuple_type(cs, t);
  if (auto s = expected_sign_by_type(type)) return *s;
  IndexTuple up(4);
  if (type.parts.size() == 1) {
    for (std::size_t j = 0; j < 4; ++j) up[j] = t[j] % cs.parent->size();
  } else {
    for (std::size_t j = 0; j < 4; ++j) up[j] = cs.cluster_anchor[cs.cluster_of[t[j]]];
  }
  if (!cs.parent->parent) return tuple_sign(cs.parent->points.select(up), 3);
  return table_sign(*cs.parent, up);
}

Outcome third_generation(unsigned) {
  Outcome o;
  const ClusteredSet cs = generate_extremal(3);
  std::uint64_t tuples = 0, zero = 0, mismatches = 0;
  for_each_combination(cs.size(), 4, [&](std::span<const Index> t) {
    ++tuples;
    const Sign s = tuple_sign(cs.points.select(t), 3);
    if (s == Sign::zero) ++zero;
    else if (s != table_sign(cs, t)) ++mismatches;
    return true;
  });
  const VerificationReport rep = verify_construction(cs);
  const SearchResult dp = longest_kth_order_monotone(cs.points, 3);
  o.pass = cs.size() == 16 && tuples == 1820 && zero == 0 && mismatches == 0 && rep.pass && dp.length <= 6;
  o.summary = std::to_string(cs.size()) + " points, " + std::to_string(tuples) + " tuples, " +
              std::to_string(zero + mismatches) + " bad signs, DP length " + std::to_string(dp.length);
  o.report = {{"points", cs.size()},
              {"A", cs.params.a.str()},
              {"tuples", tuples},
              {"zero_signs", zero},
              {"mismatches", mismatches},
              {"verification", json_io::to_json(rep)},
              {"dp", json_io::to_json(dp)}};
  return o;
}

// ---------------------------------------------------------------- 5

// Every 4-tuple of generation 4 against the type table, read from the
// materialized sign memo. Clusters are x-contiguous blocks of size m.
json certify_fourth(const ClusteredSet& cs, const Coloring& c, bool& ok) {
  const std::size_t m = cs.parent->size();
  const BinomialTable& b = c.binomials();
  const BinomialTable pb(m, 4);
  std::vector<Sign> parent(static_cast<std::size_t>(pb(m, 4)));
  for_each_combination(m, 4, [&](std::span<const Index> t) {
    parent[colex_rank(t, pb)] = table_sign(*cs.parent, t);
    return true;
  });

  // equality pattern of consecutive clusters -> table sign (mixed types only)
  std::array<Sign, 8> mixed{};
  for (unsigned pat = 1; pat < 7; ++pat) {
    std::vector<std::size_t> parts{1};
    for (unsigned j = 0; j < 3; ++j) {
      if (pat & (1u << j)) ++parts.back();
      else parts.push_back(1);
    }
    mixed[pat] = *expected_sign_by_type(TupleType{parts});
  }

  std::map<std::string, std::uint64_t> checked;
  std::uint64_t bad = 0, total = 0;
  std::array<std::uint64_t, 8> per_pattern{};
  const std::size_t n = cs.size();
  for (Index l = 3; l < n; ++l) {
    const std::uint64_t rl = b(l, 4);
    for (Index k = 2; k < l; ++k) {
      const std::uint64_t rk = rl + b(k, 3);
      for (Index j = 1; j < k; ++j) {
        const std::uint64_t rj = rk + b(j, 2);
        for (Index i = 0; i < j; ++i) {
          const std::uint64_t r = rj + i;
          const std::size_t ci = i / m, cj = j / m, ck = k / m, cl = l / m;
          const unsigned pat = (ci == cj ? 1u : 0u) | (cj == ck ? 2u : 0u) | (ck == cl ? 4u : 0u);
          Sign want;
          if (pat == 7) {
            const Index t[4] = {i % m, j % m, k % m, l % m};
            want = parent[colex_rank(t, pb)];
          } else if (pat == 0) {
            const Index t[4] = {ci, cj, ck, cl};
            want = parent[colex_rank(t, pb)];
          } else {
            want = mixed[pat];
          }
          ++total;
          ++per_pattern[pat];
          if (sign_of_color(c.cached(r)) != want) ++bad;
        }
      }
    }
  }
  ok = bad == 0 && total == b(n, 4);
  json by_pattern = json::object();
  for (unsigned pat = 0; pat < 8; ++pat) {
    std::string name = pat == 7 ? "4" : pat == 0 ? "1+1+1+1" : "";
    if (name.empty()) {
      std::vector<std::size_t> parts{1};
      for (unsigned j = 0; j < 3; ++j) {
        if (pat & (1u << j)) ++parts.back();
        else parts.push_back(1);
      }
      name = TupleType{parts}.str();
    }
    by_pattern[name] = per_pattern[pat];
  }
  return {{"tuples", total}, {"mismatches", bad}, {"by_type", by_pattern}};
}

Outcome fourth_generation(unsigned workers) {
  Outcome o;
  auto t0 = Clock::now();
  GenerateOptions gopt;
  gopt.workers = workers;
  const ClusteredSet cs = generate_extremal(4, gopt);
  o.phases.emplace_back("generate", seconds_since(t0), 0.0);

  t0 = Clock::now();
  VerifyOptions vopt;
  vopt.mode = VerifyMode::sampled;
  vopt.samples = 1'000'000;
  vopt.seed = 5005;
  vopt.workers = workers;
  const VerificationReport rep = verify_construction(cs, vopt);
  o.phases.emplace_back("sampled check", seconds_since(t0), 600.0);

  t0 = Clock::now();
  const Coloring c = geometric_coloring(cs.points, 3);
  c.materialize(workers);
  const SearchResult dp = longest_monochromatic_path(c, workers);
  const bool dp_homogeneous = is_homogeneous(c, dp.indices);
  o.phases.emplace_back("memoized DP", seconds_since(t0), 7200.0);

  t0 = Clock::now();
  bool certified = false;
  const json cert = certify_fourth(cs, c, certified);
  o.phases.emplace_back("exhaustive table check", seconds_since(t0), 0.0);

  o.pass = cs.size() == 256 && rep.pass && rep.tuples_checked == 1'000'000 && dp.length <= 8 &&
           dp_homogeneous && certified;
  o.summary = "256 points, 10^6 sampled tuples " + std::string(rep.pass ? "match" : "FAIL") +
              ", DP length " + std::to_string(dp.length) + ", all " + cert["tuples"].dump() +
              " tuples " + (certified ? "match" : "do NOT match") + " the type table";
  o.report = {{"points", cs.size()},
              {"A", cs.params.a.str()},
              {"parent_A", cs.parent->params.a.str()},
              {"sampled", json_io::to_json(rep)},
              {"dp", json_io::to_json(dp)},
              {"exhaustive", cert}};
  return o;
}

// ---------------------------------------------------------------- 6

Outcome transitivity(unsigned) {
  Outcome o;
  Rng rng(6006);
  int failures = 0;
  json rows = json::array();
  for (std::size_t k = 1; k <= 4; ++k) {
    int ok = 0;
    json first_witness = nullptr;
    for (int trial = 0; trial < 50; ++trial) {
      const PointSequence seq = random_general_sequence(rng, 12, k);
      const TransitivityReport rep = is_transitive(geometric_coloring(seq, k));
      if (rep.transitive) {
        ++ok;
      } else {
        ++failures;
        if (first_witness.is_null())
          first_witness = {{"indices", indices(rep.witness->indices)},
                           {"offending_subset", indices(rep.witness->offending_subset)}};
      }
    }
    rows.push_back({{"k", k}, {"transitive", ok}, {"witness", first_witness}});
  }
  o.pass = failures == 0;
  o.summary = std::to_string(200 - failures) + "/200 geometric colorings transitive";
  o.report = {{"seed", 6006}, {"rows", rows}, {"failures", failures}};
  return o;
}

// ---------------------------------------------------------------- 7

Outcome interpolant_agreement(unsigned) {
  Outcome o;
  Rng rng(7007);
  std::uint64_t comparisons = 0, mismatches = 0, resampled = 0;
  std::map<std::size_t, std::uint64_t> per_k;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t k = 1 + rng.below(5);
    PointSequence seq = random_sequence(rng, k + 1);
    while (tuple_sign(seq.points(), k) == Sign::zero) {
      ++resampled;
      seq = random_sequence(rng, k + 1);
    }
    const Sign s = tuple_sign(seq.points(), k);
    ++per_k[k];
    for (std::size_t pos = 0; pos <= k; ++pos) {
      ++comparisons;
      if (side_of_interpolant(seq.points(), pos) != s) ++mismatches;
    }
  }
  json counts = json::object();
  for (auto [k, c] : per_k) counts[std::to_string(k)] = c;
  o.pass = mismatches == 0;
  o.summary = std::to_string(comparisons) + " position checks on 10^4 tuples, " + std::to_string(mismatches) +
              " mismatches";
  o.report = {{"seed", 7007}, {"tuples_per_k", counts}, {"comparisons", comparisons},
              {"mismatches", mismatches}, {"resampled", resampled}};
  return o;
}

// ---------------------------------------------------------------- 8

Outcome lift_identity(unsigned) {
  Outcome o;
  Rng rng(8008);
  std::uint64_t failures = 0;
  json rows = json::array();
  for (std::size_t d = 2; d <= 6; ++d) {
    IndexTuple all(d + 1);
    for (std::size_t i = 0; i <= d; ++i) all[i] = i;
    std::uint64_t pos = 0, neg = 0, bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      PointSequence seq = random_sequence(rng, d + 1);
      while (tuple_sign(seq.points(), d) == Sign::zero) seq = random_sequence(rng, d + 1);
      (tuple_sign(seq.points(), d) == Sign::positive ? pos : neg)++;
      if (!verify_lift_identity(seq, d, all)) ++bad;
    }
    failures += bad;
    rows.push_back({{"d", d}, {"positive", pos}, {"negative", neg}, {"failures", bad}});
  }
  o.pass = failures == 0;
  o.summary = "50000 tuples over d = 2..6, " + std::to_string(failures) + " failures";
  o.report = {{"seed", 8008}, {"rows", rows}, {"failures", failures}};
  return o;
}

// ---------------------------------------------------------------- 9

// Largest subfamily whose d-wise vertices all have one last-coordinate sign,
// by enumerating every subset against a table of vertex signs.
std::size_t one_sided_oracle(const HyperplaneFamily& fam, std::size_t d) {
  const std::size_t n = fam.hyperplanes.size();
  std::map<IndexTuple, Sign> side;
  for_each_combination(n, d, [&](std::span<const Index> t) {
    std::vector<Hyperplane> hs;
    for (auto i : t) hs.push_back(fam.hyperplanes[i]);
    side[IndexTuple(t.begin(), t.end())] = vertex_of_hyperplanes(hs).back().sign();
    return true;
  });
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    IndexTuple sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(i);
    if (sub.size() <= best) continue;
    std::optional<Sign> seen;
    bool ok = true;
    if (sub.size() >= d) for_each_combination(sub.size(), d, [&](std::span<const Index> t) {
      IndexTuple pick;
      for (auto i : t) pick.push_back(sub[i]);
      const Sign s = side.at(pick);
      if (s == Sign::zero || (seen && *seen != s)) {
        ok = false;
        return false;
      }
      seen = s;
      return true;
    });
    if (ok) best = sub.size();
  }
  return best;
}

Outcome hyperplane_correspondence(unsigned) {
  Outcome o;
  Rng rng(9009);
  std::uint64_t sign_checks = 0, sign_failures = 0, max_failures = 0;
  json rows = json::array();
  for (std::size_t d = 2; d <= 4; ++d) {
    json lengths = json::array();
    for (int trial = 0; trial < 50; ++trial) {
      const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(d) + 1, 11));
      const PointSequence seq = random_general_sequence(rng, n, d - 1);
      const HyperplaneFamily fam = HyperplaneFamily::from_sequence(seq, d);
      for_each_combination(n, d, [&](std::span<const Index> t) {
        ++sign_checks;
        std::vector<Hyperplane> hs;
        for (auto i : t) hs.push_back(fam.hyperplanes[i]);
        if (vertex_of_hyperplanes(hs).back().sign() != tuple_sign(seq.select(t), d - 1)) ++sign_failures;
        return true;
      });
      const SearchResult r = max_one_sided_subset(fam);
      const std::size_t oracle = one_sided_oracle(fam, d);
      if (r.length != oracle || !is_one_sided(fam, r.indices).one_sided) ++max_failures;
      lengths.push_back({n, r.length, oracle});
    }
    rows.push_back({{"d", d}, {"instances", lengths}});
  }
  o.pass = sign_failures == 0 && max_failures == 0;
  o.summary = std::to_string(sign_checks) + " vertex signs (" + std::to_string(sign_failures) +
              " off), 150 maxima (" + std::to_string(max_failures) + " off)";
  o.report = {{"seed", 9009}, {"rows", rows}, {"sign_checks", sign_checks},
              {"sign_failures", sign_failures}, {"max_failures", max_failures}};
  return o;
}

// ---------------------------------------------------------------- 10

Outcome extraction_and_bounds(unsigned) {
  Outcome o;
  Rng rng(10010);
  int not_transitive = 0, not_homogeneous = 0, derived_failures = 0;
  json cases = json::array();
  for (int i = 0; i < 100; ++i) {
    const std::size_t l = 3 + static_cast<std::size_t>(i % 2);
    const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(l) + 2, 14));
    const PointSequence seq = random_general_sequence(rng, n, l - 1);
    const Coloring chi = geometric_coloring(seq, l - 1);
    if (!is_transitive(chi)) ++not_transitive;
    const ExtractionResult ex = erdos_rado_extract(chi, l + 1);
    if (!is_homogeneous(chi, ex.result.indices)) ++not_homogeneous;

    const ExtractionLevel lvl = detail::erdos_rado_level(chi);
    std::size_t star_size = 0;
    if (lvl.pivot) {
      const Coloring star = derived_coloring(chi, lvl.kept, *lvl.pivot);
      star_size = star.ground_size();
      if (!is_transitive(star)) ++derived_failures;
    }
    cases.push_back({{"l", l}, {"n", n}, {"length", ex.result.length}, {"indices", indices(ex.result.indices)},
                     {"derived_ground", star_size}});
  }

  int bound_failures = 0;
  json bounds = json::array();
  auto expect = [&](const char* what, const BigInt& got, const BigInt& want) {
    if (got != want) ++bound_failures;
    bounds.push_back({{"quantity", what}, {"value", got.get_str()}, {"expected", want.get_str()}});
  };
  const BoundsReport es1 = known_bounds(1, 5), es2 = known_bounds(2, 5), es3 = known_bounds(3, 7);
  if (!es1.known_lower || !es1.known_upper || !es2.known_lower || !es2.known_upper || !es3.known_lower) {
    ++bound_failures;
  } else {
    expect("ES_1(5) lower", *es1.known_lower, 17);
    expect("ES_1(5) upper", *es1.known_upper, 17);
    expect("ES_2(5) lower", *es2.known_lower, 21);
    expect("ES_2(5) upper", *es2.known_upper, 21);
    expect("ES_3(7) lower", *es3.known_lower, 17);
  }
  // the lower bound is witnessed: 16 points without a 7-point third-order monotone subset
  const ClusteredSet p3 = generate_extremal(3);
  const std::size_t p3_best = longest_kth_order_monotone(p3.points, 3).length;
  expect("generation 3 size + 1", BigInt(static_cast<unsigned long>(p3.size() + 1)), 17);
  if (p3_best > 6) ++bound_failures;
  expect("twr_1(5)", tower(1, 5), 5);
  expect("twr_2(3)", tower(2, 3), 8);
  expect("twr_3(2)", tower(3, 2), 16);
  expect("twr_3(3)", tower(3, 3), 256);
  expect("twr_4(2)", tower(4, 2), 65536);
  const BigInt t52 = tower(5, 2);
  expect("bits of twr_5(2)", BigInt(static_cast<unsigned long>(mpz_sizeinbase(t52.get_mpz_t(), 2))), 65537);

  o.pass = not_transitive == 0 && not_homogeneous == 0 && derived_failures == 0 && bound_failures == 0;
  o.summary = "100 extractions (" + std::to_string(not_homogeneous) + " not homogeneous, " +
              std::to_string(derived_failures) + " derived colorings intransitive), " +
              std::to_string(bound_failures) + " bound mismatches";
  o.report = {{"seed", 10010}, {"cases", cases}, {"input_not_transitive", not_transitive},
              {"not_homogeneous", not_homogeneous}, {"derived_failures", derived_failures},
              {"bounds", bounds}, {"generation_3_longest", p3_best}, {"bound_failures", bound_failures}};
  return o;
}

std::vector<Criterion> criteria() {
  return {
      {1, "oracle equivalence", 60, oracle_equivalence},
      {2, "monotone subsequence threshold", 30, monotone_threshold},
      {3, "convex subset threshold", 60, convex_threshold},
      {4, "generation 3 exhaustive", 10, third_generation},
      {5, "generation 4", 0, fourth_generation},
      {6, "transitivity of sign colorings", 60, transitivity},
      {7, "interpolant side agreement", 60, interpolant_agreement},
      {8, "lift determinant identity", 120, lift_identity},
      {9, "hyperplane vertex correspondence", 300, hyperplane_correspondence},
      {10, "extraction and bounds", 120, extraction_and_bounds},
  };
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

struct RunResult {
  bool pass;
  std::string dump;
};

RunResult run_one(const Criterion& c, unsigned workers, bool print) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = c.run(workers);
  } catch (const std::exception& e) {
    o.pass = false;
    o.summary = std::string("exception: ") + e.what();
    o.report = {{"exception", e.what()}};
  }
  const double elapsed = seconds_since(t0);
  bool timely = c.budget_s <= 0 || elapsed < c.budget_s;
  std::string timing = fmt_seconds(elapsed);
  if (c.budget_s > 0) timing += ", budget " + fmt_seconds(c.budget_s);
  for (const auto& [name, s, budget] : o.phases) {
    timing += "; " + name + " " + fmt_seconds(s);
    if (budget > 0) {
      timing += " of " + fmt_seconds(budget);
      timely = timely && s < budget;
    }
  }
  const bool pass = o.pass && timely;
  if (print) {
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.summary;
    if (o.pass && !timely) std::cout << " (over budget)";
    std::cout << "  (" << timing << ")" << std::endl;
  }
  json report = {{"criterion", c.id}, {"title", c.title}, {"pass", o.pass}, {"report", o.report}};
  return {pass, json_io::dump(report)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance run"};
  std::string report_dir;
  std::vector<int> only;
  unsigned workers = 1;
  app.add_option("--report-dir", report_dir, "write one JSON report per criterion here");
  app.add_option("--only", only, "run just these criteria (11 repeats the selected ones)");
  app.add_option("--workers", workers, "worker threads for the generation-4 criterion")->check(CLI::Range(1u, 256u));
  CLI11_PARSE(app, argc, argv);

  auto selected = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  if (!report_dir.empty()) std::filesystem::create_directories(report_dir);

  const auto all = criteria();
  std::map<int, std::string> first;
  int failed = 0;
  for (const auto& c : all) {
    if (!selected(c.id)) continue;
    RunResult r = run_one(c, workers, true);
    if (!r.pass) ++failed;
    if (!report_dir.empty())
      std::ofstream(report_dir + "/criterion_" + std::to_string(c.id) + ".json") << r.dump;
    first[c.id] = std::move(r.dump);
  }

  if (selected(11)) {
    const auto t0 = Clock::now();
    std::vector<int> differing;
    for (const auto& c : all) {
      if (!first.count(c.id)) continue;
      if (run_one(c, workers, false).dump != first[c.id]) differing.push_back(c.id);
    }
    const bool pass = differing.empty() && !first.empty();
    if (!pass) ++failed;
    std::string which;
    for (int id : differing) which += " " + std::to_string(id);
    std::cout << (pass ? "PASS" : "FAIL") << "  [11] determinism: " << first.size()
              << " criterion reports rerun, " << (differing.empty() ? "all byte-identical" : "differ:" + which)
              << "  (" << fmt_seconds(seconds_since(t0)) << ")" << std::endl;
  }

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
