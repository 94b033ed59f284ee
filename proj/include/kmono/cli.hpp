#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "kmono/bounds.hpp"
#include "kmono/coloring.hpp"
#include "kmono/construction.hpp"
#include "kmono/errors.hpp"
#include "kmono/json_io.hpp"
#include "kmono/lifts.hpp"
#include "kmono/monotone_search.hpp"
#include "kmono/random.hpp"

namespace kmono::cli {

using json_io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string in;
  std::string out;
  std::optional<std::size_t> k, n, d;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::size_t max_points = 256;
  bool weak = false;  // transitivity: only the subsets omitting the 2nd or 3rd element
};

inline constexpr std::uint64_t kDefaultSamples = 100'000;

namespace detail {

inline std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

inline const std::string& need_in(const RunConfig& cfg) {
  if (cfg.in.empty()) throw UsageError("missing --in");
  return cfg.in;
}

inline bool sampled(const RunConfig& cfg) { return cfg.mode == "sampled"; }

inline void validate(const RunConfig& cfg) {
  if (cfg.mode != "exhaustive" && cfg.mode != "sampled")
    throw UsageError("--mode must be exhaustive or sampled");
  if (sampled(cfg) && !cfg.seed) throw UsageError("sampled mode requires --seed");
  if (cfg.samples && *cfg.samples == 0) throw UsageError("--samples must be positive");
  if (cfg.workers == 0) throw UsageError("--workers must be positive");
}

inline json witness_json(const DegenerateInputError& e) {
  json j = {{"error", e.what()}};
  if (!e.tuple().empty()) j["witness"] = e.tuple();
  return j;
}

inline void emit(const RunConfig& cfg, const json& report, std::ostream& out) {
  if (cfg.out.empty())
    out << json_io::dump(report);
  else
    json_io::write_file(cfg.out, report);
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  GenerateOptions opt;
  opt.max_points = cfg.max_points;
  opt.workers = cfg.workers;
  const ClusteredSet cs = generate_extremal(need(cfg.n, "--n"), opt);
  const json set = json_io::to_json(cs);
  if (cfg.out.empty()) {
    out << json_io::dump(set);
  } else {
    json_io::write_file(cfg.out, set);
    out << json_io::dump({{"command", "generate"},
                          {"n", cs.generation()},
                          {"points", cs.size()},
                          {"A", cs.params.a.str()},
                          {"epsilon", cs.params.epsilon.str()},
                          {"out", cfg.out}});
  }
  return kExitOk;
}

inline int cmd_search(const RunConfig& cfg, std::ostream& out) {
  const json in = json_io::read_file(need_in(cfg));
  json report = {{"command", "search"}};
  if (in.contains("colors")) {
    const Coloring c = json_io::coloring_from_json(in);
    const SearchResult r = longest_monochromatic_path(c, cfg.workers);
    report["input"] = "coloring";
    report["n"] = c.ground_size();
    report["arity"] = c.arity();
    report["result"] = json_io::to_json(r);
    report["homogeneous"] = is_homogeneous(c, r.indices);
  } else {
    const std::size_t k = need(cfg.k, "--k");
    const PointSequence seq = json_io::sequence_from_json(in);
    const Coloring c = geometric_coloring(seq, k);
    const SearchResult r = longest_monochromatic_path(c, cfg.workers);
    report["input"] = "points";
    report["k"] = k;
    report["n"] = seq.size();
    report["result"] = json_io::to_json(r);
    report["homogeneous"] = is_homogeneous(c, r.indices);
  }
  emit(cfg, report, out);
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const ClusteredSet cs = json_io::clustered_set_from_json(json_io::read_file(need_in(cfg)));
  VerifyOptions opt;
  opt.workers = cfg.workers;
  if (sampled(cfg)) {
    opt.mode = VerifyMode::sampled;
    opt.samples = cfg.samples.value_or(kDefaultSamples);
    opt.seed = *cfg.seed;
  }
  const VerificationReport rep = verify_construction(cs, opt);
  json report = json_io::to_json(rep);
  report["command"] = "verify";
  emit(cfg, report, out);
  return rep.pass ? kExitOk : kExitFailed;
}

inline int cmd_transitivity(const RunConfig& cfg, std::ostream& out) {
  const json in = json_io::read_file(need_in(cfg));
  const bool has_colors = in.contains("colors");
  const Coloring c = has_colors ? json_io::coloring_from_json(in)
                                : geometric_coloring(json_io::sequence_from_json(in), need(cfg.k, "--k"));
  const TransitivityReport rep =
      is_transitive(c, cfg.weak ? TransitivityMode::weak : TransitivityMode::full);
  json report = {{"command", "transitivity"},
                 {"input", has_colors ? "coloring" : "points"},
                 {"n", c.ground_size()},
                 {"arity", c.arity()},
                 {"check", cfg.weak ? "weak" : "full"},
                 {"transitive", rep.transitive}};
  report["witness"] = rep.witness ? json{{"indices", rep.witness->indices},
                                         {"offending_subset", rep.witness->offending_subset}}
                                  : json(nullptr);
  emit(cfg, report, out);
  return rep.transitive ? kExitOk : kExitFailed;
}

inline int cmd_lift_check(const RunConfig& cfg, std::ostream& out) {
  const std::size_t d = need(cfg.d, "--d");
  if (d < 1) throw UsageError("--d must be >= 1");
  const PointSequence seq = json_io::sequence_from_json(json_io::read_file(need_in(cfg)));
  std::uint64_t checked = 0, failures = 0;
  json witnesses = json::array();
  auto check = [&](std::span<const Index> t) {
    ++checked;
    if (!verify_lift_identity(seq, d, t)) {
      ++failures;
      if (witnesses.size() < 16) witnesses.push_back(IndexTuple(t.begin(), t.end()));
    }
  };
  if (seq.size() >= d + 1) {
    if (sampled(cfg)) {
      Rng rng(*cfg.seed);
      const std::uint64_t s = cfg.samples.value_or(kDefaultSamples);
      for (std::uint64_t i = 0; i < s; ++i) check(rng.subset(seq.size(), d + 1));
    } else {
      for_each_combination(seq.size(), d + 1, [&](std::span<const Index> t) {
        check(t);
        return true;
      });
    }
  }
  json report = {{"command", "lift-check"},
                 {"d", d},
                 {"n", seq.size()},
                 {"mode", cfg.mode},
                 {"tuples_checked", checked},
                 {"failures", failures},
                 {"witnesses", std::move(witnesses)},
                 {"pass", failures == 0}};
  if (sampled(cfg)) report["seed"] = *cfg.seed;
  emit(cfg, report, out);
  return failures == 0 ? kExitOk : kExitFailed;
}

inline int cmd_hyperplanes(const RunConfig& cfg, std::ostream& out) {
  const json in = json_io::read_file(need_in(cfg));
  HyperplaneFamily fam;
  if (in.contains("hyperplanes")) {
    fam = json_io::hyperplane_family_from_json(in);
    if (cfg.d && *cfg.d != fam.dimension()) throw UsageError("--d does not match the family");
  } else {
    const std::size_t d = need(cfg.d, "--d");
    if (d < 2) throw UsageError("--d must be >= 2");
    fam = HyperplaneFamily::from_sequence(json_io::sequence_from_json(in), d);
  }
  json report = {{"command", "hyperplanes"}, {"d", fam.dimension()}, {"n", fam.size()}};
  report["family"] = json_io::to_json(fam);
  if (fam.source) {
    const SearchResult r = max_one_sided_subset(fam);
    const OneSidedReport check = is_one_sided(fam, r.indices);
    report["one_sided"] = json_io::to_json(r);
    report["one_sided_verified"] = check.one_sided;
  } else {
    if (fam.size() > 16) throw BudgetError("families without a source sequence are limited to 16 hyperplanes");
    report["one_sided"] = json_io::to_json(max_one_sided_bruteforce(fam));
    report["one_sided_verified"] = true;
  }
  emit(cfg, report, out);
  return kExitOk;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const BoundsReport r = known_bounds(need(cfg.k, "--k"), need(cfg.n, "--n"));
  json report = json_io::to_json(r);
  report["command"] = "bounds";
  emit(cfg, report, out);
  return kExitOk;
}

}  // namespace detail

/// Runs one command. Reports go to cfg.out, or to `out` when no path is
/// given; errors go to `err` as JSON.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    detail::validate(cfg);
    if (cfg.command == "generate") return detail::cmd_generate(cfg, out);
    if (cfg.command == "search") return detail::cmd_search(cfg, out);
    if (cfg.command == "verify") return detail::cmd_verify(cfg, out);
    if (cfg.command == "transitivity") return detail::cmd_transitivity(cfg, out);
    if (cfg.command == "lift-check") return detail::cmd_lift_check(cfg, out);
    if (cfg.command == "hyperplanes") return detail::cmd_hyperplanes(cfg, out);
    if (cfg.command == "bounds") return detail::cmd_bounds(cfg, out);
    throw UsageError("unknown command \"" + cfg.command + "\"");
  } catch (const DegenerateInputError& e) {
    err << json_io::dump(detail::witness_json(e));
    return kExitFailed;
  } catch (const ConstructionError& e) {
    err << json_io::dump({{"error", e.what()}});
    return kExitFailed;
  } catch (const std::exception& e) {
    err << json_io::dump({{"error", e.what()}});
    return kExitUsage;
  }
}

/// Parses argv into a RunConfig, or returns the exit code when parsing
/// ends the run (help, errors).
inline std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv,
                                                       std::ostream& out = std::cout,
                                                       std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"k-th order monotone subsets: constructions, searches and checks", "kmono"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* sub, bool in, bool out_flag) {
    if (in) sub->add_option("--in", cfg.in, "input JSON file")->required();
    if (out_flag) sub->add_option("--out", cfg.out, "output JSON file (default: stdout)");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    sub->add_option("--samples", cfg.samples, "sample count in sampled mode");
    sub->add_option("--seed", cfg.seed, "random seed (required in sampled mode)");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("generate", "build the clustered construction of generation n");
  gen->add_option("--n", cfg.n, "generation (n >= 2)")->required();
  gen->add_option("--max-points", cfg.max_points, "refuse generations larger than this");
  add_io(gen, false, true);
  add_workers(gen);

  auto* search = app.add_subcommand("search", "longest k-th order monotone subset / monochromatic path");
  search->add_option("--k", cfg.k, "order (point input)");
  add_io(search, true, true);
  add_workers(search);

  auto* verify = app.add_subcommand("verify", "check a construction against the sign-by-type table");
  add_io(verify, true, true);
  add_sampling(verify);
  add_workers(verify);

  auto* trans = app.add_subcommand("transitivity", "exhaustive transitivity check of a coloring");
  trans->add_option("--k", cfg.k, "order (point input)");
  trans->add_flag("--weak", cfg.weak, "only check the two subsets named by the weak condition");
  add_io(trans, true, true);

  auto* lift = app.add_subcommand("lift-check", "compare divided-difference signs with lifted orientations");
  lift->add_option("--d", cfg.d, "dimension")->required();
  add_io(lift, true, true);
  add_sampling(lift);

  auto* hyp = app.add_subcommand("hyperplanes", "hyperplane family of a sequence and its largest one-sided subfamily");
  hyp->add_option("--d", cfg.d, "dimension (point input)");
  add_io(hyp, true, true);

  auto* bounds = app.add_subcommand("bounds", "known bounds on ES_k(n)");
  bounds->add_option("--k", cfg.k, "order")->required();
  bounds->add_option("--n", cfg.n, "subset size")->required();
  add_io(bounds, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return cfg;
}

}  // namespace kmono::cli
