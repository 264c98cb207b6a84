#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"
#include "ftks/lp.hpp"
#include "ftks/metric.hpp"

namespace ftks {

/// Greedy filtering of positive-coverage clients into well-separated reps.
struct RepAssignment {
  ClientSet reps;                     // pick order
  std::map<Client, ClientSet> child;  // rep -> children (including the rep)
  CoverageVector cov;
  double radius = 0.0;
};

/// Takes positive-cov clients in decreasing cov (ties: smallest id); each pick
/// adopts every remaining client within 2r.
inline RepAssignment filter_reps(const Instance& inst, const CoverageVector& cov, double r) {
  RepAssignment out;
  out.cov = cov;
  out.radius = r;
  ClientSet remaining = cov.support();
  while (!remaining.empty()) {
    Client j = remaining.front();
    for (Client v : remaining) {
      if (cov.cov[v] > cov.cov[j]) j = v;
    }
    out.reps.push_back(j);
    ClientSet& kids = out.child[j];
    ClientSet rest;
    for (Client v : remaining) {
      (inst.client_client(v, j) <= 2.0 * r ? kids : rest).push_back(v);
    }
    remaining = std::move(rest);
  }
  return out;
}

struct UniformOpening {
  FacilitySet open;
  ClientSet chosen_reps;  // reps whose ell nearest facilities were opened
  ClientSet served;       // union of their child sets
};

/// Opens N_ell(j, F) for the floor(k / ell) reps with the largest child sets
/// (ties: smallest id).
inline UniformOpening open_facilities_uniform(const Instance& inst, const RepAssignment& rep, int k, int ell) {
  UniformOpening out;
  ClientSet order = rep.reps;
  std::stable_sort(order.begin(), order.end(), [&](Client a, Client b) {
    const auto sa = rep.child.at(a).size();
    const auto sb = rep.child.at(b).size();
    return sa != sb ? sa > sb : a < b;
  });
  const std::size_t slots = static_cast<std::size_t>(k / ell);
  if (order.size() > slots) order.resize(slots);
  const FacilitySet all = inst.all_facilities();
  for (Client j : order) {
    const FacilitySet near = nearest_set(inst, j, all, static_cast<std::size_t>(ell));
    out.open.insert(out.open.end(), near.begin(), near.end());
    const ClientSet& kids = rep.child.at(j);
    out.served.insert(out.served.end(), kids.begin(), kids.end());
  }
  out.chosen_reps = std::move(order);
  std::sort(out.chosen_reps.begin(), out.chosen_reps.end());
  std::sort(out.open.begin(), out.open.end());
  out.open.erase(std::unique(out.open.begin(), out.open.end()), out.open.end());
  std::sort(out.served.begin(), out.served.end());
  return out;
}

/// The rep-set floor inequality sum_{j in R} cov_j <= floor(k / ell), returned
/// only when the assignment's own cov violates it.
inline std::optional<Cut> check_wlcut(const RepAssignment& rep, int k, int ell) {
  const int floor_k = k / ell;
  double lhs = 0.0;
  for (Client j : rep.reps) lhs += rep.cov.cov[j];
  if (lhs <= floor_k + kLpTolerance) return std::nullopt;
  Cut cut;
  cut.kind = CutKind::WLCut;
  cut.lambda.assign(rep.cov.cov.size(), 0);
  for (Client j : rep.reps) cut.lambda[j] = 1;
  cut.rhs = floor_k;
  return cut;
}

struct UfksoRadiusLog {
  double radius = 0.0;
  bool rounded = false;
  std::size_t lp_solves = 0;
  std::size_t cuts = 0;
};

struct UfksoResult {
  Solution solution;
  std::vector<UfksoRadiusLog> radii;  // every radius probed, ascending
  std::vector<Cut> cuts_emitted;      // at the accepted radius and below
  std::size_t total_cuts = 0;
};

/// Round-or-cut at a single radius. Returns nullopt when the LP with the
/// accumulated floor cuts becomes infeasible.
inline std::optional<Solution> solve_ufkso_at_radius(const Instance& inst, double r, UfksoRadiusLog* log = nullptr,
                                                     std::vector<Cut>* emitted = nullptr) {
  const int ell = inst.ell(0);
  const LpModel model = build_weak_lp(inst, r);
  CutPool pool;
  const std::size_t cap = inst.num_clients() * inst.num_clients();
  UfksoRadiusLog local;
  local.radius = r;
  std::optional<Solution> found;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > cap) throw IterationCapExceeded("uniform round-or-cut exceeded |C|^2 iterations at radius " + std::to_string(r));
    const LpResult lp = solve_lp(model, pool);
    ++local.lp_solves;
    if (!lp.feasible()) break;
    const RepAssignment rep = filter_reps(inst, lp.coverage(inst.num_clients()), r);
    if (auto cut = check_wlcut(rep, inst.k(), ell)) {
      if (emitted) emitted->push_back(*cut);
      pool.push_back(std::move(*cut));
      ++local.cuts;
      continue;
    }
    const UniformOpening opening = open_facilities_uniform(inst, rep, inst.k(), ell);
    found = make_solution(inst, opening.open, opening.served, r);
    local.rounded = true;
    break;
  }
  if (log) *log = local;
  return found;
}

/// Uniform fault-tolerance solver: ascending scan of candidate radii, each
/// with its own cut pool. Requires every client to share one ell.
inline UfksoResult solve_ufkso(const Instance& inst) {
  if (inst.distinct_levels() != 1) throw ArgumentError("uniform solver requires a single fault-tolerance level");
  UfksoResult result;
  for (double r : candidate_radii(inst)) {
    std::size_t servable = 0;
    for (Client v = 0; v < inst.num_clients(); ++v) servable += detail::served_possible(inst, v, r) ? 1 : 0;
    UfksoRadiusLog log;
    log.radius = r;
    if (servable < static_cast<std::size_t>(inst.m())) {
      result.radii.push_back(log);
      continue;
    }
    auto sol = solve_ufkso_at_radius(inst, r, &log, &result.cuts_emitted);
    result.radii.push_back(log);
    result.total_cuts += log.cuts;
    if (sol) {
      result.solution = std::move(*sol);
      return result;
    }
  }
  throw Infeasible("no candidate radius admits a rounded solution");
}

}  // namespace ftks
