#pragma once

// JSON encodings of the library types. Indices are 0-based throughout;
// rationals are "num/den" strings (integers without the denominator).

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmono/bounds.hpp"
#include "kmono/coloring.hpp"
#include "kmono/combinatorics.hpp"
#include "kmono/construction.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/lifts.hpp"
#include "kmono/monotone_search.hpp"
#include "kmono/rational.hpp"

namespace kmono::json_io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw FormatError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline IndexTuple index_list(const json& j) {
  if (!j.is_array()) throw FormatError("expected an index array");
  IndexTuple out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError("indices must be non-negative integers");
    out.push_back(v.get<Index>());
  }
  return out;
}

inline std::string tuple_key(std::span<const Index> t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s;
}

}  // namespace detail

inline json to_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("rational must be a \"num/den\" string or an integer");
}

inline const char* sign_name(Sign s) {
  switch (s) {
    case Sign::positive: return "+1";
    case Sign::negative: return "-1";
    default: return "0";
  }
}

// ---- point sequences

inline json to_json(const PointSequence& seq) {
  json pts = json::array();
  for (const auto& p : seq) pts.push_back({{"x", p.x.str()}, {"y", p.y.str()}});
  return {{"points", std::move(pts)}};
}

inline std::vector<PlanarPoint> points_from_json(const json& arr) {
  if (!arr.is_array()) throw FormatError("\"points\" must be an array");
  std::vector<PlanarPoint> pts;
  pts.reserve(arr.size());
  for (const auto& p : arr)
    pts.push_back({rational_from_json(detail::field(p, "x")), rational_from_json(detail::field(p, "y"))});
  return pts;
}

/// Accepts any object with a "points" array, including ClusteredSet files.
inline PointSequence sequence_from_json(const json& j) {
  return PointSequence(points_from_json(detail::field(j, "points")));
}

// ---- colorings

inline json to_json(const Coloring& c) {
  json colors = json::object();
  for_each_combination(c.ground_size(), c.arity(), [&](std::span<const Index> t) {
    colors[detail::tuple_key(t)] = static_cast<int>(c.color(t));
    return true;
  });
  return {{"n", c.ground_size()}, {"arity", c.arity()}, {"colors", std::move(colors)}};
}

inline Coloring coloring_from_json(const json& j) {
  const std::size_t n = detail::size_field(j, "n");
  const std::size_t arity = detail::size_field(j, "arity");
  if (arity < 1) throw FormatError("arity must be >= 1");
  const json& colors = detail::field(j, "colors");
  if (!colors.is_object()) throw FormatError("\"colors\" must be an object");
  const std::uint64_t total = binomial(n, arity);
  if (colors.size() != total)
    throw FormatError("coloring lists " + std::to_string(colors.size()) + " tuples, expected " +
                      std::to_string(total));
  const BinomialTable b(n, arity);
  std::vector<ColorId> table(total, 0);
  for (const auto& [key, val] : colors.items()) {
    IndexTuple t;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(part, &used);
      } catch (const std::exception&) {
        throw FormatError("bad tuple key \"" + key + "\"");
      }
      if (used != part.size()) throw FormatError("bad tuple key \"" + key + "\"");
      t.push_back(v);
    }
    if (t.size() != arity || !is_strictly_increasing(t) || t.back() >= n)
      throw FormatError("tuple key \"" + key + "\" is not an increasing " + std::to_string(arity) +
                        "-subset of [0," + std::to_string(n) + ")");
    if (!val.is_number_integer() || (val.get<int>() != 1 && val.get<int>() != 2))
      throw FormatError("color of \"" + key + "\" must be 1 or 2");
    table[colex_rank(t, b)] = static_cast<ColorId>(val.get<int>());
  }
  // Size matched and keys are distinct, so every slot is filled.
  return Coloring::from_table(n, arity, std::move(table));
}

// ---- search results and bounds

inline json to_json(const SearchResult& r) {
  return {{"length", r.length}, {"indices", r.indices}, {"color", static_cast<int>(r.color)}};
}

inline SearchResult search_result_from_json(const json& j) {
  SearchResult r;
  r.length = detail::size_field(j, "length");
  r.indices = detail::index_list(detail::field(j, "indices"));
  const int c = detail::field(j, "color").get<int>();
  if (c != 1 && c != 2) throw FormatError("color must be 1 or 2");
  r.color = static_cast<ColorId>(c);
  if (r.indices.size() != r.length) throw FormatError("length does not match indices");
  return r;
}

inline json to_json(const BoundsReport& r) {
  auto big = [](const std::optional<BigInt>& v) -> json {
    if (!v) return "unknown";
    return v->get_str();
  };
  json j = {{"k", r.k},
            {"n", r.n},
            {"known_lower", big(r.known_lower)},
            {"known_upper", big(r.known_upper)},
            {"formula_tags", r.formula_tags}};
  if (r.upper_log2) j["upper_log2"] = r.upper_log2->get_str();
  return j;
}

// ---- constructions

inline json to_json(const ClusteredSet& cs) {
  json j = to_json(cs.points);
  j["n"] = cs.generation();
  j["params"] = {{"n", std::to_string(cs.generation())},
                 {"A", cs.params.a.str()},
                 {"epsilon", cs.params.epsilon.str()}};
  j["cluster_of"] = cs.cluster_of;
  j["cluster_anchor"] = cs.cluster_anchor;
  j["base_set"] = to_json(cs.params.base_set)["points"];
  j["parent"] = cs.parent ? to_json(*cs.parent) : json(nullptr);
  return j;
}

inline ClusteredSet clustered_set_from_json(const json& j) {
  ClusteredSet cs;
  cs.points = sequence_from_json(j);
  cs.params.generation = detail::size_field(j, "n");
  const json& params = detail::field(j, "params");
  cs.params.a = rational_from_json(detail::field(params, "A"));
  cs.params.epsilon = rational_from_json(detail::field(params, "epsilon"));
  const IndexTuple of = detail::index_list(detail::field(j, "cluster_of"));
  const IndexTuple anchor = detail::index_list(detail::field(j, "cluster_anchor"));
  cs.cluster_of.assign(of.begin(), of.end());
  cs.cluster_anchor.assign(anchor.begin(), anchor.end());
  if (j.contains("base_set"))
    cs.params.base_set = PointSequence(points_from_json(j.at("base_set")));
  if (j.contains("parent") && !j.at("parent").is_null()) {
    cs.parent = std::make_shared<const ClusteredSet>(clustered_set_from_json(j.at("parent")));
    if (cs.parent->generation() + 1 != cs.generation()) throw FormatError("parent generation mismatch");
  } else if (cs.generation() != 2) {
    throw FormatError("generation " + std::to_string(cs.generation()) + " needs its parent");
  }
  if (cs.cluster_of.size() != cs.size()) throw FormatError("cluster_of has wrong length");
  return cs;
}

inline json to_json(const SlopeReport& s) {
  return {{"max_cross_slope", s.max_cross.str()},
          {"min_intra_slope", s.min_intra.str()},
          {"curves_checked", s.curves_checked},
          {"pass", s.pass}};
}

inline json to_json(const VerificationReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"indices", x.indices},
                 {"type", x.type},
                 {"expected", sign_name(x.expected)},
                 {"actual", sign_name(x.actual)}});
  json j = {{"generation", r.generation},
            {"points", r.points},
            {"mode", r.mode == VerifyMode::exhaustive ? "exhaustive" : "sampled"},
            {"samples", r.samples},
            {"seed", r.seed},
            {"tuples_checked", r.tuples_checked},
            {"zero_signs", r.zero_signs},
            {"mismatches", r.mismatches},
            {"clusters_ok", r.clusters_ok},
            {"type_counts", r.type_counts},
            {"witnesses", std::move(w)},
            {"pass", r.pass}};
  if (!r.cluster_error.empty()) j["cluster_error"] = r.cluster_error;
  j["slopes"] = r.slopes ? to_json(*r.slopes) : json(nullptr);
  return j;
}

// ---- hyperplanes

inline json to_json(const HyperplaneFamily& f) {
  json hs = json::array();
  for (const auto& h : f.hyperplanes) {
    json coeffs = json::array();
    for (const auto& c : h.coefficients) coeffs.push_back(c.str());
    hs.push_back({{"coeffs", std::move(coeffs)}, {"rhs", h.rhs.str()}});
  }
  json j = {{"hyperplanes", std::move(hs)}};
  j["source"] = f.source ? to_json(*f.source)["points"] : json(nullptr);
  return j;
}

inline HyperplaneFamily hyperplane_family_from_json(const json& j) {
  HyperplaneFamily f;
  const json& hs = detail::field(j, "hyperplanes");
  if (!hs.is_array()) throw FormatError("\"hyperplanes\" must be an array");
  for (const auto& h : hs) {
    Hyperplane out;
    const json& coeffs = detail::field(h, "coeffs");
    if (!coeffs.is_array()) throw FormatError("\"coeffs\" must be an array");
    for (const auto& c : coeffs) out.coefficients.push_back(rational_from_json(c));
    out.rhs = rational_from_json(detail::field(h, "rhs"));
    if (!f.hyperplanes.empty() && out.dimension() != f.dimension())
      throw FormatError("hyperplanes of mixed dimension");
    f.hyperplanes.push_back(std::move(out));
  }
  if (j.contains("source") && !j.at("source").is_null())
    f.source = PointSequence(points_from_json(j.at("source")));
  return f;
}

// ---- files

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// Two-space indented, trailing newline; byte-stable for equal values.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << dump(j);
}

}  // namespace kmono::json_io
