#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"
#include "ftks/partition.hpp"

namespace ftks::oracle {

inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

struct OracleResult {
  double opt_radius = 0.0;
  FacilitySet witness_open;
  ClientSet witness_served;
  std::vector<double> radii;           // all candidate radii, ascending
  std::vector<std::size_t> coverage;   // max clients coverable per radius
  std::uint64_t subsets = 0;

  /// Max coverage over radii strictly below `bound`.
  std::size_t max_coverage_below(double bound) const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] < bound) best = std::max(best, coverage[i]);
    }
    return best;
  }
};

/// Clients v with at least ell_v facilities of S within distance r.
inline ClientSet coverage_at(const Instance& inst, const FacilitySet& S, double r) {
  ClientSet out;
  for (Client v = 0; v < inst.num_clients(); ++v) {
    int within = 0;
    for (Facility i : S) within += inst.client_facility(v, i) <= r ? 1 : 0;
    if (within >= inst.ell(v)) out.push_back(v);
  }
  return out;
}

/// C(n, s), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t s) {
  if (s > n) return 0;
  s = std::min(s, n - s);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= s; ++i) {
    const std::uint64_t num = n - s + i;
    if (out > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    out = out * num / i;
  }
  return out;
}

/// The rank-th s-subset of {0..n-1} in lexicographic order.
inline std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t s, std::uint64_t rank) {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < s; ++slot) {
    for (;; ++next) {
      const std::uint64_t below = binomial(n - next - 1, s - slot - 1);
      if (rank < below) break;
      rank -= below;
    }
    out.push_back(next++);
  }
  return out;
}

/// Advances to the next s-subset in lexicographic order; false at the end.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t s = c.size();
  for (std::size_t i = s; i-- > 0;) {
    if (c[i] < n - s + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

namespace detail {

struct Sweep {
  std::vector<std::size_t> coverage;
  std::vector<std::uint64_t> first_rank;  // smallest rank attaining coverage[i]
};

inline double ranked_distance(const Instance& inst, Client v, const std::vector<std::size_t>& S) {
  std::vector<double> d;
  for (std::size_t i : S) d.push_back(inst.client_facility(v, i));
  std::sort(d.begin(), d.end());
  return d[static_cast<std::size_t>(inst.ell(v)) - 1];
}

inline Sweep sweep_range(const Instance& inst, const std::vector<double>& radii, std::size_t s, std::uint64_t lo,
                         std::uint64_t hi) {
  Sweep out{std::vector<std::size_t>(radii.size(), 0),
            std::vector<std::uint64_t>(radii.size(), std::numeric_limits<std::uint64_t>::max())};
  if (lo >= hi) return out;
  std::vector<std::size_t> S = unrank_combination(inst.num_facilities(), s, lo);
  std::vector<double> need(inst.num_clients());
  for (std::uint64_t rank = lo; rank < hi; ++rank) {
    for (Client v = 0; v < inst.num_clients(); ++v) need[v] = ranked_distance(inst, v, S);
    std::sort(need.begin(), need.end());
    std::size_t covered = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      while (covered < need.size() && need[covered] <= radii[i]) ++covered;
      if (covered > out.coverage[i]) {
        out.coverage[i] = covered;
        out.first_rank[i] = rank;
      }
    }
    next_combination(S, inst.num_facilities());
  }
  return out;
}

}  // namespace detail

/// Exhaustive optimum: every facility subset of size min(k, |F|) against every
/// candidate radius. Throws BudgetExceeded when the subset count exceeds
/// `max_subsets`. Work splits over `jobs` threads by subset rank; the merged
/// result does not depend on `jobs`.
inline OracleResult exact_opt(const Instance& inst, std::uint64_t max_subsets = kDefaultSubsetBudget,
                              unsigned jobs = 1) {
  const std::size_t f = inst.num_facilities();
  const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(inst.k()), f);
  const std::uint64_t total = binomial(f, s);
  if (total > max_subsets) {
    throw BudgetExceeded(total, "exact enumeration needs " + std::to_string(total) + " subsets, budget is " +
                                    std::to_string(max_subsets));
  }

  OracleResult out;
  for (Client v = 0; v < inst.num_clients(); ++v) {
    for (Facility i = 0; i < f; ++i) out.radii.push_back(inst.client_facility(v, i));
  }
  std::sort(out.radii.begin(), out.radii.end());
  out.radii.erase(std::unique(out.radii.begin(), out.radii.end()), out.radii.end());
  out.subsets = total;

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(total, 1))));
  std::vector<detail::Sweep> parts(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
    if (jobs == 1) {
      parts[w] = detail::sweep_range(inst, out.radii, s, lo, hi);
    } else {
      workers.emplace_back([&, w, lo, hi] { parts[w] = detail::sweep_range(inst, out.radii, s, lo, hi); });
    }
  }
  for (auto& th : workers) th.join();

  out.coverage.assign(out.radii.size(), 0);
  std::vector<std::uint64_t> rank(out.radii.size(), std::numeric_limits<std::uint64_t>::max());
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < out.radii.size(); ++i) {
      if (p.coverage[i] > out.coverage[i] || (p.coverage[i] == out.coverage[i] && p.first_rank[i] < rank[i])) {
        out.coverage[i] = p.coverage[i];
        rank[i] = p.first_rank[i];
      }
    }
  }

  for (std::size_t i = 0; i < out.radii.size(); ++i) {
    if (out.coverage[i] >= static_cast<std::size_t>(inst.m())) {
      out.opt_radius = out.radii[i];
      const auto S = unrank_combination(f, s, rank[i]);
      out.witness_open.assign(S.begin(), S.end());
      out.witness_served = coverage_at(inst, out.witness_open, out.opt_radius);
      return out;
    }
  }
  throw Infeasible("no facility subset serves m clients at any candidate radius");
}

/// Exhaustive budgeting optimum over all {k_P <= ell_P, sum k_P <= k}.
inline long budget_brute(const GoodPartition& gp, int k, std::uint64_t max_tuples = kDefaultSubsetBudget) {
  std::uint64_t tuples = 1;
  for (int l : gp.part_ell) {
    tuples *= static_cast<std::uint64_t>(l + 1);
    if (tuples > max_tuples) throw BudgetExceeded(tuples, "budget enumeration exceeds its tuple budget");
  }
  const std::size_t parts = gp.parts.size();

  // Per part: clients adopted by reps with ell_j <= l, straight from the definition.
  auto value = [&](std::size_t p, int l) {
    long total = 0;
    for (Client j : gp.reps) {
      if (gp.ell[j] > l) continue;
      if (!std::binary_search(gp.parts[p].begin(), gp.parts[p].end(), j)) continue;
      total += static_cast<long>(gp.child.at(j).size());
    }
    return total;
  };

  std::vector<int> kp(parts, 0);
  long best = 0;
  for (;;) {
    int used = 0;
    long val = 0;
    for (std::size_t p = 0; p < parts; ++p) {
      used += kp[p];
      val += value(p, kp[p]);
    }
    if (used <= k) best = std::max(best, val);
    std::size_t p = 0;
    while (p < parts && kp[p] == gp.part_ell[p]) kp[p++] = 0;
    if (p == parts) break;
    ++kp[p];
  }
  return best;
}

/// max over S with |S| = min(k, |F|) of sum of lambda_v over clients S serves
/// at radius r. A lambda-cut with rhs m-1 is sound iff this is <= m-1.
inline long max_lambda_weight(const Instance& inst, double r, const std::vector<int>& lambda,
                              std::uint64_t max_subsets = kDefaultSubsetBudget) {
  const std::size_t f = inst.num_facilities();
  const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(inst.k()), f);
  const std::uint64_t total = binomial(f, s);
  if (total > max_subsets) throw BudgetExceeded(total, "lambda enumeration exceeds its subset budget");
  std::vector<std::size_t> S = unrank_combination(f, s, 0);
  long best = 0;
  do {
    const FacilitySet open(S.begin(), S.end());
    long weight = 0;
    for (Client v : coverage_at(inst, open, r)) weight += lambda[v];
    best = std::max(best, weight);
  } while (next_combination(S, f));
  return best;
}

}  // namespace ftks::oracle
