#pragma once

#include <algorithm>
#include <vector>

#include "ftks/partition.hpp"

namespace ftks {

/// Facilities per part and the number of adopted clients they serve.
struct BudgetAllocation {
  std::vector<int> k_per_part;
  long opt = 0;
  /// table[nu][b]: best value using the first nu parts and budget b.
  std::vector<std::vector<long>> table;
  /// choice[nu][b]: the k_P for part nu-1 that attains table[nu][b].
  std::vector<std::vector<int>> choice;
};

/// Adopted clients of part p served when it receives `budget` facilities:
/// sum of |child(j)| over reps j of the part with ell_j <= budget.
inline long part_gain(const GoodPartition& gp, std::size_t p, int budget) {
  long gain = 0;
  for (const auto& [j, kids] : gp.child) {
    if (gp.ell[j] <= budget && std::binary_search(gp.parts[p].begin(), gp.parts[p].end(), j)) {
      gain += static_cast<long>(kids.size());
    }
  }
  return gain;
}

/// Table DP over parts: M[nu][b] = max over l <= min(b, ell_P) of
/// M[nu-1][b-l] + gain(P_nu, l). Ties keep the smallest l.
inline BudgetAllocation budget_dp(const GoodPartition& gp, int k) {
  const std::size_t parts = gp.parts.size();
  const int budget = std::max(k, 0);
  BudgetAllocation out;
  out.table.assign(parts + 1, std::vector<long>(static_cast<std::size_t>(budget) + 1, 0));
  out.choice.assign(parts + 1, std::vector<int>(static_cast<std::size_t>(budget) + 1, 0));

  for (std::size_t nu = 1; nu <= parts; ++nu) {
    const int cap = gp.part_ell[nu - 1];
    std::vector<long> gain(static_cast<std::size_t>(std::min(cap, budget)) + 1);
    for (int l = 0; l < static_cast<int>(gain.size()); ++l) gain[static_cast<std::size_t>(l)] = part_gain(gp, nu - 1, l);
    for (int b = 0; b <= budget; ++b) {
      long best = -1;
      int arg = 0;
      for (int l = 0; l <= std::min(b, cap); ++l) {
        const long val = out.table[nu - 1][static_cast<std::size_t>(b - l)] + gain[static_cast<std::size_t>(l)];
        if (val > best) {
          best = val;
          arg = l;
        }
      }
      out.table[nu][static_cast<std::size_t>(b)] = best;
      out.choice[nu][static_cast<std::size_t>(b)] = arg;
    }
  }

  out.opt = out.table[parts][static_cast<std::size_t>(budget)];
  out.k_per_part.assign(parts, 0);
  int b = budget;
  for (std::size_t nu = parts; nu >= 1; --nu) {
    const int l = out.choice[nu][static_cast<std::size_t>(b)];
    out.k_per_part[nu - 1] = l;
    b -= l;
  }
  return out;
}

/// Objective of an arbitrary allocation; used to audit DP reconstructions.
inline long allocation_value(const GoodPartition& gp, const std::vector<int>& k_per_part) {
  long total = 0;
  for (std::size_t p = 0; p < gp.parts.size(); ++p) total += part_gain(gp, p, k_per_part[p]);
  return total;
}

}  // namespace ftks
