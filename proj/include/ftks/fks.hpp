#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"
#include "ftks/metric.hpp"

namespace ftks {

/// One execution of the greedy fault-tolerant Hochbaum-Shmoys pass at radius r.
struct FksRun {
  double radius = 0.0;
  ClientSet reps;                        // in pick order
  std::map<Client, ClientSet> child;     // rep -> adopted clients
  FacilitySet open;
  bool feasible = false;
};

/// Greedy pass: repeatedly take the unassigned client with the largest ell
/// (ties: smallest id), open its ell nearest facilities, and adopt every
/// unassigned client within 2r. Infeasible when a rep has fewer than ell
/// facilities within r or the reps demand more than k facilities in total.
inline FksRun solve_fks_at_radius(const Instance& inst, double r) {
  FksRun run;
  run.radius = r;
  run.feasible = true;
  const FacilitySet all = inst.all_facilities();
  std::vector<bool> assigned(inst.num_clients(), false);
  long demand = 0;

  for (;;) {
    Client j = inst.num_clients();
    for (Client v = 0; v < inst.num_clients(); ++v) {
      if (!assigned[v] && (j == inst.num_clients() || inst.ell(v) > inst.ell(j))) j = v;
    }
    if (j == inst.num_clients()) break;

    run.reps.push_back(j);
    const auto need = static_cast<std::size_t>(inst.ell(j));
    demand += inst.ell(j);
    if (facilities_within(inst, j, r).size() < need) {
      run.feasible = false;
    } else {
      const FacilitySet near = nearest_set(inst, j, all, need);
      run.open.insert(run.open.end(), near.begin(), near.end());
    }
    ClientSet& kids = run.child[j];
    for (Client v = 0; v < inst.num_clients(); ++v) {
      if (!assigned[v] && inst.client_client(v, j) <= 2.0 * r) {
        assigned[v] = true;
        kids.push_back(v);
      }
    }
  }
  if (demand > inst.k()) run.feasible = false;
  std::sort(run.open.begin(), run.open.end());
  run.open.erase(std::unique(run.open.begin(), run.open.end()), run.open.end());
  return run;
}

/// Result of the outlier-free solver: the solution plus how the radius was found.
struct FksResult {
  Solution solution;
  FksRun run;
  /// False if some candidate below the binary-search answer was also feasible.
  bool monotone = true;
};

/// Binary search over candidate radii for the smallest radius where the greedy
/// pass succeeds, serving every client within 3 times that radius. The
/// candidates below the answer are then re-probed; if any is feasible the
/// search falls back to the first feasible candidate in ascending order.
inline FksResult solve_fks(const Instance& inst) {
  const std::vector<double> radii = candidate_radii(inst);
  if (radii.empty() || !solve_fks_at_radius(inst, radii.back()).feasible) {
    throw Infeasible("no candidate radius admits a feasible greedy pass");
  }
  std::size_t lo = 0, hi = radii.size() - 1;  // answer in [lo, hi]; hi feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (solve_fks_at_radius(inst, radii[mid]).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  FksResult result;
  for (std::size_t i = 0; i < hi; ++i) {
    if (solve_fks_at_radius(inst, radii[i]).feasible) {
      result.monotone = false;
      hi = i;
      break;
    }
  }
  result.run = solve_fks_at_radius(inst, radii[hi]);
  result.solution = make_solution(inst, result.run.open, inst.all_clients(), radii[hi]);
  return result;
}

}  // namespace ftks
