#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ftks/budget.hpp"
#include "ftks/errors.hpp"
#include "ftks/instance.hpp"
#include "ftks/lp.hpp"
#include "ftks/metric.hpp"
#include "ftks/partition.hpp"

namespace ftks {

enum class Strategy { Chain, Forest, Best };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Chain:
      return "chain";
    case Strategy::Forest:
      return "forest";
    case Strategy::Best:
      return "best";
  }
  return "?";
}

/// Opens the k_P nearest facilities to each part head and serves the child
/// sets of reps whose ell fits the part's allocation. Every served client is
/// within (rho + 1) r of its ell-th open facility.
inline Solution round_from_allocation(const Instance& inst, const GoodPartition& gp, const BudgetAllocation& alloc) {
  if (alloc.opt < inst.m()) throw PreconditionViolated("budget optimum below m; cut instead of rounding");
  const FacilitySet all = inst.all_facilities();
  FacilitySet open;
  ClientSet served;
  for (std::size_t p = 0; p < gp.parts.size(); ++p) {
    const int kp = alloc.k_per_part[p];
    const FacilitySet near = nearest_set(inst, gp.heads[p], all, static_cast<std::size_t>(kp));
    open.insert(open.end(), near.begin(), near.end());
    for (const auto& [j, kids] : gp.child) {
      if (gp.ell[j] <= kp && gp.part_of(j) == p) served.insert(served.end(), kids.begin(), kids.end());
    }
  }
  return make_solution(inst, std::move(open), std::move(served), gp.radius);
}

/// The inequality sum_{j in R} |child(j)| cov_j <= m - 1. Valid for every
/// integral solution whenever the budgeting optimum is below m.
inline Cut make_cut(const GoodPartition& gp, const BudgetAllocation& alloc, int m) {
  if (alloc.opt >= m) throw PreconditionViolated("budget optimum reaches m; round instead of cutting");
  Cut cut;
  cut.kind = CutKind::LambdaCut;
  cut.lambda.assign(gp.cov.cov.size(), 0);
  for (const auto& [j, kids] : gp.child) cut.lambda[j] = static_cast<int>(kids.size());
  cut.rhs = m - 1;
  return cut;
}

enum class Decision { Round, Cut, RadiusTooSmall };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Round:
      return "round";
    case Decision::Cut:
      return "cut";
    case Decision::RadiusTooSmall:
      return "too_small";
  }
  return "?";
}

/// One pass of the loop at a fixed radius.
struct IterationRecord {
  double radius = 0.0;
  std::size_t iteration = 0;
  LpStatus lp = LpStatus::Infeasible;
  CoverageVector cov;
  std::vector<GoodPartition> partitions;
  std::vector<long> budget_opt;  // per entry of `partitions`
  Decision decision = Decision::RadiusTooSmall;
  std::optional<PartitionBuilder> decided_by;
  std::vector<Cut> cuts;  // emitted this iteration
};

struct FksoOptions {
  Strategy strategy = Strategy::Best;
  /// Per-radius cap on loop iterations; 0 selects |C|^3.
  std::size_t iteration_cap = 0;
  /// Tab-separated trace, one line per iteration.
  std::ostream* trace = nullptr;
  /// Receives every iteration when set.
  std::vector<IterationRecord>* history = nullptr;
};

struct RadiusOutcome {
  double radius = 0.0;
  Decision status = Decision::RadiusTooSmall;
  std::optional<Solution> solution;
  std::optional<GoodPartition> partition;  // the one rounded
  std::size_t iterations = 0;
  std::size_t cuts = 0;

  bool rounded() const { return status == Decision::Round; }
};

inline void write_trace_header(std::ostream& os) { os << "# radius\titer\tlp\tstrategy\trho\topt_B\tdecision\n"; }

namespace detail {

inline void trace_line(const FksoOptions& opt, const IterationRecord& rec, const GoodPartition* gp, long opt_b) {
  if (!opt.trace) return;
  std::ostream& os = *opt.trace;
  os << rec.radius << '\t' << rec.iteration << '\t' << (rec.lp == LpStatus::Feasible ? "feasible" : "infeasible") << '\t';
  if (gp) {
    os << to_string(gp->builder) << '\t' << gp->rho << '\t' << opt_b;
  } else {
    os << "-\t-\t-";
  }
  os << '\t' << to_string(rec.decision) << '\n';
}

}  // namespace detail

/// Round-or-cut at a fixed radius: solve the coverage polytope with the cuts
/// so far, build good partitions on the positive-coverage clients, and either
/// round through the budgeting DP or add the partition's lambda-cut and
/// repeat. Ends with a rounded solution or an infeasible polytope.
///
/// Strategy::Best builds both partitions each iteration. It rounds with the
/// smaller-rho partition when that one reaches m. Otherwise it rounds with
/// the other partition only if the rounded radius still fits within
/// (smaller rho + 1) r, and else cuts with every partition that fell short.
inline RadiusOutcome solve_fkso_at_radius(const Instance& inst, double r, const FksoOptions& opt = {}) {
  const std::size_t n = inst.num_clients();
  const std::size_t cap = opt.iteration_cap ? opt.iteration_cap : n * n * n;
  const int t = inst.distinct_levels();
  const int m = inst.m();
  CutPool pool;
  RadiusOutcome out;
  out.radius = r;

  for (std::size_t iter = 0;; ++iter) {
    if (iter >= cap) {
      throw IterationCapExceeded("round-or-cut exceeded " + std::to_string(cap) + " iterations at radius " +
                                 std::to_string(r));
    }
    IterationRecord rec;
    rec.radius = r;
    rec.iteration = iter;
    const LpResult lp = solve_lp(build_cov_polytope(inst, r, pool));
    rec.lp = lp.status;
    out.iterations = iter + 1;
    if (!lp.feasible()) {
      rec.decision = Decision::RadiusTooSmall;
      detail::trace_line(opt, rec, nullptr, 0);
      if (opt.history) opt.history->push_back(std::move(rec));
      out.status = Decision::RadiusTooSmall;
      return out;
    }
    rec.cov = lp.coverage(n);

    // Candidates ordered by preference: smallest rho first, chain on ties.
    std::vector<GoodPartition> built;
    if (opt.strategy != Strategy::Forest) built.push_back(build_partition_chain(inst, rec.cov, r));
    if (opt.strategy != Strategy::Chain) built.push_back(build_partition_forest(inst, rec.cov, r));
    if (built.size() == 2 && forest_rho(t) < chain_rho(t)) std::swap(built[0], built[1]);

    std::vector<BudgetAllocation> allocs;
    for (const auto& gp : built) {
      allocs.push_back(budget_dp(gp, inst.k()));
      rec.budget_opt.push_back(allocs.back().opt);
    }

    std::optional<std::size_t> chosen;
    std::optional<Solution> sol;
    if (allocs[0].opt >= m) {
      chosen = 0;
      sol = round_from_allocation(inst, built[0], allocs[0]);
    } else if (built.size() == 2 && allocs[1].opt >= m) {
      Solution alt = round_from_allocation(inst, built[1], allocs[1]);
      const double bound = (built[0].rho + 1.0) * r;
      if (alt.achieved <= bound + kRadiusTolerance * std::max(1.0, bound)) {
        chosen = 1;
        sol = std::move(alt);
      }
    }

    if (chosen) {
      rec.decision = Decision::Round;
      rec.decided_by = built[*chosen].builder;
      detail::trace_line(opt, rec, &built[*chosen], allocs[*chosen].opt);
      out.status = Decision::Round;
      out.solution = std::move(sol);
      out.partition = built[*chosen];
      rec.partitions = std::move(built);
      if (opt.history) opt.history->push_back(std::move(rec));
      return out;
    }

    rec.decision = Decision::Cut;
    rec.decided_by = built[0].builder;
    for (std::size_t b = 0; b < built.size(); ++b) {
      if (allocs[b].opt >= m) continue;
      Cut cut = make_cut(built[b], allocs[b], m);
      if (std::find(rec.cuts.begin(), rec.cuts.end(), cut) != rec.cuts.end()) continue;
      rec.cuts.push_back(cut);
      pool.push_back(std::move(cut));
      ++out.cuts;
    }
    detail::trace_line(opt, rec, &built[0], allocs[0].opt);
    rec.partitions = std::move(built);
    if (opt.history) opt.history->push_back(std::move(rec));
  }
}

struct FksoResult {
  Solution solution;
  GoodPartition partition;
  std::vector<RadiusOutcome> radii;  // every radius probed, ascending
  std::size_t total_cuts = 0;
  std::size_t total_iterations = 0;
};

/// Ascending scan of candidate radii; returns the first rounded solution.
/// Radii where fewer than m clients can be served at all are rejected without
/// solving.
inline FksoResult solve_fkso(const Instance& inst, const FksoOptions& opt = {}) {
  if (opt.trace) write_trace_header(*opt.trace);
  FksoResult result;
  for (double r : candidate_radii(inst)) {
    std::size_t servable = 0;
    for (Client v = 0; v < inst.num_clients(); ++v) servable += detail::served_possible(inst, v, r) ? 1 : 0;
    if (servable < static_cast<std::size_t>(inst.m())) {
      RadiusOutcome skipped;
      skipped.radius = r;
      result.radii.push_back(std::move(skipped));
      continue;
    }
    RadiusOutcome outcome = solve_fkso_at_radius(inst, r, opt);
    result.total_cuts += outcome.cuts;
    result.total_iterations += outcome.iterations;
    if (outcome.rounded()) {
      result.solution = *outcome.solution;
      result.partition = *outcome.partition;
      outcome.partition.reset();
      result.radii.push_back(std::move(outcome));
      return result;
    }
    result.radii.push_back(std::move(outcome));
  }
  throw Infeasible("every candidate radius was rejected");
}

}  // namespace ftks
