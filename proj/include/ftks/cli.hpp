#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftks/ftks.hpp"

namespace ftks::cli {

/// Process exit codes; the only success/failure channel of the tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInfeasible = 2,
  kInvalidInput = 3,
  kBudgetExceeded = 4,
};

enum class Algorithm { Fks, Ufkso, Fkso };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Fks:
      return "fks";
    case Algorithm::Ufkso:
      return "ufkso";
    case Algorithm::Fkso:
      return "fkso";
  }
  return "?";
}

struct SolveArgs {
  std::string instance_path;
  Algorithm algorithm = Algorithm::Fkso;
  Strategy strategy = Strategy::Best;
  std::optional<double> radius;
  /// Echoed in the report. The solvers themselves draw no random numbers.
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  bool trace = false;
  bool timing = false;
  std::uint64_t max_subsets = oracle::kDefaultSubsetBudget;
  unsigned jobs = 1;
};

struct ExactArgs {
  std::string instance_path;
  std::uint64_t max_subsets = oracle::kDefaultSubsetBudget;
  unsigned jobs = 1;
  bool timing = false;
};

struct GenArgs {
  std::string kind;  // gap | limit | random
  int k = 2;
  double distance = 1000.0;  // gap: cross-gadget M; limit: unit length
  int t = 2;
  std::uint64_t seed = 1;
  int n = 8;
  int f = 6;
  int m = 5;
};

struct VerifyArgs {
  std::string instance_path;
  std::string solution_path;
};

struct BenchArgs {
  int t = 2;
  int count = 10;
  std::uint64_t seed = 1;
  int n = 8;
  int f = 6;
  int k = 4;
  std::uint64_t max_subsets = oracle::kDefaultSubsetBudget;
  bool timing = false;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline void emit(std::ostream& out, const ordered_json& report) { out << report.dump(2) << "\n"; }

inline ordered_json instance_summary(const Instance& inst) {
  ordered_json j;
  j["digest"] = instance_digest(inst);
  j["n"] = inst.num_clients();
  j["f"] = inst.num_facilities();
  j["k"] = inst.k();
  j["m"] = inst.m();
  j["t"] = inst.distinct_levels();
  return j;
}

inline ordered_json solution_json(const Solution& s) {
  ordered_json j;
  j["open"] = s.open;
  j["served"] = s.served;
  j["radius_guess"] = s.radius_guess;
  j["achieved"] = s.achieved;
  return j;
}

inline ordered_json curve_json(const oracle::OracleResult& o) {
  ordered_json curve = ordered_json::array();
  for (std::size_t i = 0; i < o.radii.size(); ++i) curve.push_back({{"radius", o.radii[i]}, {"coverage", o.coverage[i]}});
  return curve;
}

inline ordered_json oracle_json(const oracle::OracleResult& o) {
  ordered_json j;
  j["opt_radius"] = o.opt_radius;
  j["subsets"] = o.subsets;
  j["witness"] = {{"open", o.witness_open}, {"served", o.witness_served}};
  j["coverage_curve"] = curve_json(o);
  return j;
}

inline ordered_json result_json(const char* solver, const Solution& s) {
  ordered_json j;
  j["solver"] = solver;
  j["status"] = "solved";
  j["radius_guess"] = s.radius_guess;
  j["achieved"] = s.achieved;
  j["dilation"] = s.dilation;
  j["dilation_basis"] = "radius_guess";
  j["open_count"] = s.open.size();
  j["served_count"] = s.served.size();
  return j;
}

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace detail

/// Runs one solver and writes a single JSON report to `out`.
inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = detail::Clock::now();
  Instance inst;
  try {
    inst = load_instance_file(args.instance_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  if (args.algorithm == Algorithm::Ufkso && inst.distinct_levels() != 1) {
    err << "error: ufkso requires a single fault-tolerance level, instance has " << inst.distinct_levels() << "\n";
    return kInvalidInput;
  }

  ordered_json report;
  report["command"] = "solve";
  ordered_json echo;
  echo["algorithm"] = to_string(args.algorithm);
  echo["strategy"] = to_string(args.strategy);
  echo["radius"] = args.radius ? ordered_json(*args.radius) : ordered_json(nullptr);
  echo["seed"] = args.seed ? ordered_json(*args.seed) : ordered_json(nullptr);
  echo["oracle"] = args.oracle;
  report["args"] = echo;
  report["instance"] = detail::instance_summary(inst);

  std::optional<Solution> solution;
  ordered_json result;
  try {
    switch (args.algorithm) {
      case Algorithm::Fks: {
        if (args.radius) {
          const FksRun run = solve_fks_at_radius(inst, *args.radius);
          if (run.feasible) solution = make_solution(inst, run.open, inst.all_clients(), *args.radius);
        } else {
          FksResult res = solve_fks(inst);
          solution = res.solution;
          result["monotone"] = res.monotone;
        }
        break;
      }
      case Algorithm::Ufkso: {
        if (args.radius) {
          UfksoRadiusLog log;
          solution = solve_ufkso_at_radius(inst, *args.radius, &log);
          result["cuts"] = log.cuts;
          result["lp_solves"] = log.lp_solves;
        } else {
          UfksoResult res = solve_ufkso(inst);
          solution = res.solution;
          result["cuts"] = res.total_cuts;
          ordered_json log = ordered_json::array();
          for (const auto& r : res.radii) {
            log.push_back({{"radius", r.radius}, {"status", r.rounded ? "round" : "too_small"},
                           {"lp_solves", r.lp_solves}, {"cuts", r.cuts}});
          }
          result["radius_log"] = log;
        }
        break;
      }
      case Algorithm::Fkso: {
        FksoOptions opt;
        opt.strategy = args.strategy;
        if (args.trace) opt.trace = &err;
        auto radius_entry = [](const RadiusOutcome& o) {
          return ordered_json{{"radius", o.radius}, {"status", to_string(o.status)},
                              {"iterations", o.iterations}, {"cuts", o.cuts}};
        };
        if (args.radius) {
          if (args.trace) write_trace_header(err);
          RadiusOutcome o = solve_fkso_at_radius(inst, *args.radius, opt);
          if (o.rounded()) {
            solution = *o.solution;
            result["partition"] = {{"builder", to_string(o.partition->builder)}, {"rho", o.partition->rho}};
          }
          result["iterations"] = o.iterations;
          result["cuts"] = o.cuts;
          result["radius_log"] = ordered_json::array({radius_entry(o)});
        } else {
          FksoResult res = solve_fkso(inst, opt);
          solution = res.solution;
          result["partition"] = {{"builder", to_string(res.partition.builder)}, {"rho", res.partition.rho}};
          result["iterations"] = res.total_iterations;
          result["cuts"] = res.total_cuts;
          ordered_json log = ordered_json::array();
          for (const auto& o : res.radii) log.push_back(radius_entry(o));
          result["radius_log"] = log;
        }
        break;
      }
    }
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  ordered_json entry = solution ? detail::result_json(to_string(args.algorithm), *solution)
                                : ordered_json{{"solver", to_string(args.algorithm)}, {"status", "infeasible"}};
  for (auto it = result.begin(); it != result.end(); ++it) entry[it.key()] = it.value();
  report["results"] = ordered_json::array({entry});
  report["solution"] = solution ? detail::solution_json(*solution) : ordered_json(nullptr);

  int code = solution ? kOk : kInfeasible;
  if (args.oracle) {
    try {
      const oracle::OracleResult o = oracle::exact_opt(inst, args.max_subsets, args.jobs);
      ordered_json oj = detail::oracle_json(o);
      if (solution) {
        // With the optimum known, dilation is measured against it.
        const ordered_json ratio =
            o.opt_radius > 0.0 ? ordered_json(solution->achieved / o.opt_radius) : ordered_json(nullptr);
        oj["ratio"] = ratio;
        report["results"][0]["dilation"] = ratio;
        report["results"][0]["dilation_basis"] = "oracle";
      }
      report["oracle"] = oj;
    } catch (const BudgetExceeded& e) {
      err << "oracle: " << e.what() << "\n";
      report["oracle"] = {{"error", "budget_exceeded"}, {"required_subsets", e.required()}};
    }
  }
  if (args.timing) report["wall_time_ms"] = detail::elapsed_ms(start);
  detail::emit(out, report);
  return code;
}

inline int cmd_exact(const ExactArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = detail::Clock::now();
  Instance inst;
  try {
    inst = load_instance_file(args.instance_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  ordered_json report;
  report["command"] = "exact";
  report["instance"] = detail::instance_summary(inst);
  int code = kOk;
  try {
    const oracle::OracleResult o = oracle::exact_opt(inst, args.max_subsets, args.jobs);
    report["oracle"] = detail::oracle_json(o);
    report["solution"] = detail::solution_json(make_solution(inst, o.witness_open, o.witness_served, o.opt_radius));
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    report["oracle"] = {{"error", "budget_exceeded"}, {"required_subsets", e.required()}};
    code = kBudgetExceeded;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    report["oracle"] = nullptr;
    code = kInfeasible;
  }
  if (args.timing) report["wall_time_ms"] = detail::elapsed_ms(start);
  detail::emit(out, report);
  return code;
}

/// Writes a canonical instance document.
inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Instance inst;
    if (args.kind == "gap") {
      inst = gen_gap_instance(args.k, args.distance);
    } else if (args.kind == "limit") {
      inst = gen_limit_instance(args.t, args.k, args.distance);
    } else if (args.kind == "random") {
      inst = gen_random_instance(args.seed, args.n, args.f, args.k, args.m, args.t);
    } else {
      err << "error: unknown instance kind '" << args.kind << "'\n";
      return kInvalidInput;
    }
    validate_instance(inst);
    out << save_instance(inst);
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

/// Outcome of rechecking a claimed solution against an instance.
struct VerifyOutcome {
  bool consistent = true;
  ordered_json checks = ordered_json::array();
  double achieved = 0.0;
};

/// Independent recheck of (S, T): ids in range and distinct, |S| <= k,
/// |T| >= m, every served client has ell_v open facilities, and any claimed
/// radius matches the recomputed one.
inline VerifyOutcome verify_solution(const Instance& inst, const nlohmann::json& doc) {
  VerifyOutcome v;
  auto check = [&](const char* name, bool ok, ordered_json detail = nullptr) {
    ordered_json c{{"name", name}, {"ok", ok}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    v.checks.push_back(std::move(c));
    v.consistent = v.consistent && ok;
    return ok;
  };
  const nlohmann::json& sol = doc.contains("solution") ? doc.at("solution") : doc;
  if (!sol.is_object() || !sol.contains("open") || !sol.contains("served") || !sol.at("open").is_array() ||
      !sol.at("served").is_array()) {
    check("schema", false, "expected {\"open\": [...], \"served\": [...]}");
    return v;
  }
  std::vector<long long> open_raw, served_raw;
  for (const auto& x : sol.at("open")) open_raw.push_back(x.is_number_integer() ? x.get<long long>() : -1);
  for (const auto& x : sol.at("served")) served_raw.push_back(x.is_number_integer() ? x.get<long long>() : -1);

  FacilitySet open;
  for (long long i : open_raw) {
    if (i < 0 || static_cast<std::size_t>(i) >= inst.num_facilities()) {
      check("facility_ids", false, {{"facility", i}});
      return v;
    }
    open.push_back(static_cast<Facility>(i));
  }
  ClientSet served;
  for (long long c : served_raw) {
    if (c < 0 || static_cast<std::size_t>(c) >= inst.num_clients()) {
      check("client_ids", false, {{"client", c}});
      return v;
    }
    served.push_back(static_cast<Client>(c));
  }
  std::sort(open.begin(), open.end());
  std::sort(served.begin(), served.end());
  check("distinct_ids", std::adjacent_find(open.begin(), open.end()) == open.end() &&
                            std::adjacent_find(served.begin(), served.end()) == served.end());
  check("budget", open.size() <= static_cast<std::size_t>(inst.k()),
        {{"open", open.size()}, {"k", inst.k()}});
  check("inliers", served.size() >= static_cast<std::size_t>(inst.m()),
        {{"served", served.size()}, {"m", inst.m()}});

  for (Client c : served) {
    if (static_cast<std::size_t>(inst.ell(c)) > open.size()) {
      check("fault_tolerance", false, {{"client", c}, {"ell", inst.ell(c)}, {"open", open.size()}});
      return v;
    }
  }
  v.achieved = achieved_radius(inst, open, served);
  if (sol.contains("achieved") && sol.at("achieved").is_number()) {
    const double claimed = sol.at("achieved").get<double>();
    const double tol = kTriangleTolerance * std::max(1.0, claimed);
    ordered_json detail{{"claimed", claimed}, {"recomputed", v.achieved}};
    if (v.achieved > claimed + tol) {
      for (Client c : served) {
        if (dist_rank(inst, c, open, static_cast<std::size_t>(inst.ell(c))) > claimed + tol) {
          detail["witness_client"] = c;
          break;
        }
      }
    }
    check("achieved", std::abs(v.achieved - claimed) <= tol, detail);
  }
  return v;
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  Instance inst;
  nlohmann::json doc;
  try {
    inst = load_instance_file(args.instance_path);
    doc = nlohmann::json::parse(read_file(args.solution_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  const VerifyOutcome v = verify_solution(inst, doc);
  ordered_json report;
  report["command"] = "verify";
  report["instance"] = detail::instance_summary(inst);
  report["consistent"] = v.consistent;
  report["achieved"] = v.achieved;
  report["checks"] = v.checks;
  detail::emit(out, report);
  return v.consistent ? kOk : kCheckFailed;
}

/// Random suite at a fixed t: every strategy's achieved radius against the
/// exact optimum. Records dilations; asserts nothing.
inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = detail::Clock::now();
  if (args.t < 1 || args.t > args.k || args.t > args.n || args.k > args.f) {
    err << "error: bench needs 1 <= t <= min(k, n) and k <= f\n";
    return kInvalidInput;
  }
  SeededSampler params(args.seed);
  ordered_json rows = ordered_json::array();
  const Strategy strategies[] = {Strategy::Chain, Strategy::Forest, Strategy::Best};
  std::vector<double> worst(3, 0.0), sum(3, 0.0);
  try {
    for (int i = 0; i < args.count; ++i) {
      const std::uint64_t seed = args.seed * 1'000'003ULL + static_cast<std::uint64_t>(i);
      const int m = params.between(1, args.n);
      const Instance inst = gen_random_instance(seed, args.n, args.f, args.k, m, args.t);
      const oracle::OracleResult o = oracle::exact_opt(inst, args.max_subsets);
      ordered_json row{{"seed", seed}, {"m", m}, {"opt_radius", o.opt_radius}};
      for (std::size_t s = 0; s < 3; ++s) {
        FksoOptions opt;
        opt.strategy = strategies[s];
        const FksoResult res = solve_fkso(inst, opt);
        const double ratio = o.opt_radius > 0.0 ? res.solution.achieved / o.opt_radius : 1.0;
        worst[s] = std::max(worst[s], ratio);
        sum[s] += ratio;
        row[to_string(strategies[s])] = {{"achieved", res.solution.achieved}, {"ratio", ratio},
                                         {"rho", res.partition.rho}, {"cuts", res.total_cuts}};
      }
      rows.push_back(row);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  ordered_json report;
  report["command"] = "bench";
  report["params"] = {{"t", args.t}, {"count", args.count}, {"seed", args.seed}, {"n", args.n}, {"f", args.f}, {"k", args.k}};
  report["guarantee"] = std::min(4.0 * args.t - 1.0, std::ldexp(1.0, args.t) + 1.0);
  ordered_json summary;
  for (std::size_t s = 0; s < 3; ++s) {
    summary[to_string(strategies[s])] = {{"max_ratio", worst[s]},
                                         {"mean_ratio", args.count ? sum[s] / args.count : 0.0}};
  }
  report["summary"] = summary;
  report["instances"] = rows;
  if (args.timing) report["wall_time_ms"] = detail::elapsed_ms(start);
  detail::emit(out, report);
  return kOk;
}

}  // namespace ftks::cli
