// Helpers shared by the unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ftks/ftks.hpp"

namespace ftks::testing {

/// Same metric, every client at level `ell`.
inline Instance with_uniform_ell(const Instance& inst, int ell) {
  const auto d = inst.dist_table();
  return Instance(inst.num_clients(), inst.num_facilities(), inst.k(), inst.m(),
                  std::vector<int>(inst.num_clients(), ell), std::vector<double>(d.begin(), d.end()));
}

struct RandomParams {
  int n, f, k, m, t;
  std::uint64_t seed;
};

/// Draws instance parameters within the given caps; m is drawn from [1, n]
/// unless `all_inliers` is set.
inline RandomParams draw_params(SeededSampler& rng, int max_n, int max_f, int max_k, int max_t, bool all_inliers) {
  RandomParams p{};
  p.f = rng.between(1, max_f);
  p.k = rng.between(1, std::min(max_k, p.f));
  p.n = rng.between(1, max_n);
  p.t = rng.between(1, std::min({max_t, p.k, p.n}));
  p.m = all_inliers ? p.n : rng.between(1, p.n);
  p.seed = rng.below(1'000'000'007ULL);
  return p;
}

inline Instance make_instance(const RandomParams& p) { return gen_random_instance(p.seed, p.n, p.f, p.k, p.m, p.t); }

/// Draws a random uniform instance with its single level fixed to `ell`.
inline Instance random_uniform_instance(SeededSampler& rng, int ell, int k, int max_n, int max_f) {
  const int f = rng.between(k, max_f);
  const int n = rng.between(1, max_n);
  const int m = rng.between(1, n);
  return with_uniform_ell(gen_random_instance(rng.below(1'000'000'007ULL), n, f, k, m, 1), ell);
}

/// Random labelled partition for the budgeting DP: up to `max_parts` parts,
/// 1..3 reps each with ell in [1, max_ell] and 1..3 children at or below
/// the rep's level. No metric is attached.
inline GoodPartition random_partition(SeededSampler& rng, int max_parts, int max_ell) {
  GoodPartition gp;
  const int parts = rng.between(1, max_parts);
  Client next = 0;
  for (int p = 0; p < parts; ++p) {
    ClientSet members;
    const int reps = rng.between(1, 3);
    for (int r = 0; r < reps; ++r) {
      const Client j = next++;
      const int level = rng.between(1, max_ell);
      gp.ell.push_back(level);
      gp.reps.push_back(j);
      ClientSet kids{j};
      const int extra = rng.between(0, 2);
      for (int c = 0; c < extra; ++c) {
        kids.push_back(next++);
        gp.ell.push_back(rng.between(1, level));
      }
      gp.child[j] = kids;
      members.insert(members.end(), kids.begin(), kids.end());
    }
    std::sort(members.begin(), members.end());
    gp.parts.push_back(members);
  }
  gp.cov.cov.assign(next, 1.0);
  for (Client v = 0; v < next; ++v) gp.domain.push_back(v);
  for (const auto& part : gp.parts) {
    int top = 0;
    Client head = part.front();
    for (Client v : part) top = std::max(top, gp.ell[v]);
    for (Client v : part) {
      if (gp.child.count(v) && gp.ell[v] == top) {
        head = v;
        break;
      }
    }
    gp.part_ell.push_back(top);
    gp.heads.push_back(head);
  }
  return gp;
}

/// Guarantee of the general solver under Strategy::Best.
inline double fkso_factor(int t) { return std::min(4.0 * t - 1.0, std::ldexp(1.0, t) + 1.0); }

/// a <= factor * b with relative slack for Euclidean round-off.
inline bool within_factor(double a, double factor, double b) {
  const double bound = factor * b;
  return a <= bound + 1e-9 * std::max(1.0, bound);
}

/// Independent recheck of a solution: |S| <= k, |T| >= m, achieved recomputed.
inline bool solution_consistent(const Instance& inst, const Solution& s) {
  if (s.open.size() > static_cast<std::size_t>(inst.k())) return false;
  if (s.served.size() < static_cast<std::size_t>(inst.m())) return false;
  double worst = 0.0;
  for (Client v : s.served) {
    const std::size_t a = static_cast<std::size_t>(inst.ell(v));
    if (a > s.open.size()) return false;
    std::vector<double> ds;
    for (Facility i : s.open) ds.push_back(inst.client_facility(v, i));
    std::sort(ds.begin(), ds.end());
    worst = std::max(worst, ds[a - 1]);
  }
  return worst == s.achieved;
}

}  // namespace ftks::testing
