#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ftks/instance.hpp"
#include "ftks/lp.hpp"

namespace ftks {

enum class PartitionBuilder { Chain, Forest, Manual };

inline const char* to_string(PartitionBuilder b) {
  switch (b) {
    case PartitionBuilder::Chain:
      return "chain";
    case PartitionBuilder::Forest:
      return "forest";
    case PartitionBuilder::Manual:
      return "manual";
  }
  return "?";
}

/// A partition of the positive-coverage clients together with the rep
/// structure that certifies it as (rho, cov)-good.
struct GoodPartition {
  std::vector<ClientSet> parts;       // each ascending
  ClientSet reps;                     // pick order
  std::map<Client, ClientSet> child;  // rep -> children, including the rep
  std::vector<Client> heads;          // j_P per part: a max-ell rep of the part
  std::vector<int> part_ell;          // ell_P per part
  double rho = 0.0;
  double radius = 0.0;
  CoverageVector cov;                 // full length n
  std::vector<int> ell;               // full length n
  ClientSet domain;                   // the partitioned clients, ascending
  PartitionBuilder builder = PartitionBuilder::Manual;

  // Forest builder only.
  std::vector<std::pair<Client, Client>> edges;  // (later rep, earlier root)
  std::map<Client, int> height;

  std::size_t part_of(Client v) const {
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (std::binary_search(parts[p].begin(), parts[p].end(), v)) return p;
    }
    return parts.size();
  }
};

/// Relative slack on the part-radius bound; matches the metric tolerance.
inline constexpr double kRadiusTolerance = 1e-9;

inline double chain_rho(int t) { return 4.0 * t - 2.0; }
inline double forest_rho(int t) { return std::ldexp(1.0, t); }

namespace detail {

inline std::vector<int> all_ells(const Instance& inst) { return {inst.ells().begin(), inst.ells().end()}; }

// Max-cov pick among `remaining` (ascending ids), ties to the smallest id.
inline Client pick_max_cov(const ClientSet& remaining, const CoverageVector& cov) {
  Client j = remaining.front();
  for (Client v : remaining) {
    if (cov.cov[v] > cov.cov[j]) j = v;
  }
  return j;
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Parts from rep components: component_of[i] labels reps[i]. Parts are ordered
// by their earliest-picked rep; heads are the smallest-id max-ell rep.
inline void assemble_parts(GoodPartition& gp, const std::vector<std::size_t>& component_of) {
  std::map<std::size_t, std::size_t> part_index;
  std::vector<ClientSet> part_reps;
  for (std::size_t i = 0; i < gp.reps.size(); ++i) {
    auto [it, inserted] = part_index.try_emplace(component_of[i], part_reps.size());
    if (inserted) part_reps.emplace_back();
    part_reps[it->second].push_back(gp.reps[i]);
  }
  gp.parts.assign(part_reps.size(), {});
  gp.heads.assign(part_reps.size(), 0);
  gp.part_ell.assign(part_reps.size(), 0);
  for (std::size_t p = 0; p < part_reps.size(); ++p) {
    for (Client j : part_reps[p]) {
      const ClientSet& kids = gp.child.at(j);
      gp.parts[p].insert(gp.parts[p].end(), kids.begin(), kids.end());
    }
    std::sort(gp.parts[p].begin(), gp.parts[p].end());
    int top = 0;
    for (Client v : gp.parts[p]) top = std::max(top, gp.ell[v]);
    gp.part_ell[p] = top;
    Client head = gp.parts[p].back() + 1;
    for (Client j : part_reps[p]) {
      if (gp.ell[j] == top && (head > gp.parts[p].back() || j < head)) head = j;
    }
    gp.heads[p] = head;
  }
}

inline GoodPartition start_partition(const Instance& inst, const CoverageVector& cov, double r,
                                     PartitionBuilder builder) {
  GoodPartition gp;
  gp.radius = r;
  gp.cov = cov;
  gp.ell = all_ells(inst);
  gp.domain = cov.support();
  gp.builder = builder;
  return gp;
}

}  // namespace detail

/// Chain builder: reps by max cov adopt same-or-lower-ell clients within
/// 2tr; reps within 2r of each other are linked, and parts are the unions of
/// child sets over linked components. Good at rho = 4t - 2.
inline GoodPartition build_partition_chain(const Instance& inst, const CoverageVector& cov, double r) {
  GoodPartition gp = detail::start_partition(inst, cov, r, PartitionBuilder::Chain);
  const int t = inst.distinct_levels();
  gp.rho = chain_rho(t);
  const double adopt = 2.0 * t * r;

  ClientSet remaining = gp.domain;
  while (!remaining.empty()) {
    const Client j = detail::pick_max_cov(remaining, cov);
    gp.reps.push_back(j);
    ClientSet& kids = gp.child[j];
    ClientSet rest;
    for (Client v : remaining) {
      const bool adopted = inst.client_client(v, j) <= adopt && inst.ell(v) <= inst.ell(j);
      (adopted ? kids : rest).push_back(v);
    }
    remaining = std::move(rest);
  }

  std::vector<std::size_t> parent(gp.reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t a = 0; a < gp.reps.size(); ++a) {
    for (std::size_t b = a + 1; b < gp.reps.size(); ++b) {
      if (inst.client_client(gp.reps[a], gp.reps[b]) <= 2.0 * r) {
        parent[detail::find_root(parent, a)] = detail::find_root(parent, b);
      }
    }
  }
  std::vector<std::size_t> component(gp.reps.size());
  for (std::size_t a = 0; a < gp.reps.size(); ++a) component[a] = detail::find_root(parent, a);
  detail::assemble_parts(gp, component);
  return gp;
}

/// Forest builder: each new rep links to current roots within
/// 2^height(root) * r, takes height 1 + max linked height, and adopts
/// same-or-lower-ell clients within 2^height * r. Parts are the trees.
/// Good at rho = 2^t.
inline GoodPartition build_partition_forest(const Instance& inst, const CoverageVector& cov, double r) {
  GoodPartition gp = detail::start_partition(inst, cov, r, PartitionBuilder::Forest);
  gp.rho = forest_rho(inst.distinct_levels());

  ClientSet remaining = gp.domain;
  std::vector<Client> roots;
  std::map<Client, Client> tree_parent;
  while (!remaining.empty()) {
    const Client j = detail::pick_max_cov(remaining, cov);
    gp.reps.push_back(j);
    int h = 0;
    std::vector<Client> still_roots;
    for (Client root : roots) {
      const int rh = gp.height.at(root);
      if (inst.client_client(j, root) <= std::ldexp(r, rh)) {
        gp.edges.push_back({j, root});
        tree_parent[root] = j;
        h = std::max(h, rh);
      } else {
        still_roots.push_back(root);
      }
    }
    still_roots.push_back(j);
    roots = std::move(still_roots);
    gp.height[j] = h + 1;

    const double adopt = std::ldexp(r, h + 1);
    ClientSet& kids = gp.child[j];
    ClientSet rest;
    for (Client v : remaining) {
      const bool adopted = inst.client_client(v, j) <= adopt && inst.ell(v) <= inst.ell(j);
      (adopted ? kids : rest).push_back(v);
    }
    remaining = std::move(rest);
  }

  std::vector<std::size_t> component(gp.reps.size());
  for (std::size_t a = 0; a < gp.reps.size(); ++a) {
    Client top = gp.reps[a];
    for (auto it = tree_parent.find(top); it != tree_parent.end(); it = tree_parent.find(top)) top = it->second;
    component[a] = top;
  }
  detail::assemble_parts(gp, component);
  return gp;
}

struct PartitionCheck {
  bool ok = true;
  int property = 0;  // 1..3 for the failing property, 0 when ok
  std::string message;
  std::vector<Client> witnesses;

  explicit operator bool() const { return ok; }
};

/// Checks the three good-partition properties literally against `rho`:
/// (1) child sets partition the domain, refine the parts, and every child is
///     cov- and ell-dominated by its rep;
/// (2) reps in different parts are more than 2r apart;
/// (3) every part has a max-ell head in R within rho * r of all its members.
inline PartitionCheck verify_good_partition(const Instance& inst, const GoodPartition& gp, double rho) {
  auto fail = [](int prop, std::string msg, std::vector<Client> w) {
    return PartitionCheck{false, prop, std::move(msg), std::move(w)};
  };
  const double r = gp.radius;

  std::map<Client, int> in_part, in_child;
  for (const auto& part : gp.parts) {
    for (Client v : part) ++in_part[v];
  }
  for (Client j : gp.reps) {
    if (!gp.child.count(j)) return fail(1, "rep without a child set", {j});
  }
  if (gp.child.size() != gp.reps.size()) return fail(1, "child set keyed by a non-rep", {});
  for (const auto& [j, kids] : gp.child) {
    for (Client v : kids) ++in_child[v];
  }
  for (Client v : gp.domain) {
    if (in_part[v] != 1) return fail(1, "client not in exactly one part", {v});
    if (in_child[v] != 1) return fail(1, "client not in exactly one child set", {v});
  }
  if (in_part.size() != gp.domain.size() || in_child.size() != gp.domain.size()) {
    return fail(1, "partition covers clients outside the domain", {});
  }
  for (const auto& [j, kids] : gp.child) {
    const std::size_t pj = gp.part_of(j);
    for (Client v : kids) {
      if (gp.part_of(v) != pj) return fail(1, "child set split across parts", {j, v});
      if (gp.cov.cov[j] < gp.cov.cov[v]) return fail(1, "child has larger cov than its rep", {j, v});
      if (inst.ell(j) < inst.ell(v)) return fail(1, "child has larger ell than its rep", {j, v});
    }
  }

  for (std::size_t a = 0; a < gp.reps.size(); ++a) {
    for (std::size_t b = a + 1; b < gp.reps.size(); ++b) {
      const Client x = gp.reps[a], y = gp.reps[b];
      if (gp.part_of(x) != gp.part_of(y) && !(inst.client_client(x, y) > 2.0 * r)) {
        return fail(2, "reps in different parts within 2r", {x, y});
      }
    }
  }

  if (gp.heads.size() != gp.parts.size()) return fail(3, "missing part heads", {});
  for (std::size_t p = 0; p < gp.parts.size(); ++p) {
    const Client head = gp.heads[p];
    int top = 0;
    for (Client v : gp.parts[p]) top = std::max(top, inst.ell(v));
    if (gp.part_of(head) != p || !gp.child.count(head) || inst.ell(head) != top) {
      return fail(3, "head is not a max-ell rep of its part", {head});
    }
    const double bound = rho * r;
    for (Client v : gp.parts[p]) {
      const double d = inst.client_client(head, v);
      if (d > bound + kRadiusTolerance * std::max(1.0, bound)) {
        std::ostringstream os;
        os << "d(head, v) = " << d << " exceeds rho * r = " << bound;
        return fail(3, os.str(), {head, v});
      }
    }
  }
  return {};
}

/// max over parts of max_{v in P} d(j_P, v); the radius the partition realizes.
inline double realized_part_radius(const Instance& inst, const GoodPartition& gp) {
  double worst = 0.0;
  for (std::size_t p = 0; p < gp.parts.size(); ++p) {
    for (Client v : gp.parts[p]) worst = std::max(worst, inst.client_client(gp.heads[p], v));
  }
  return worst;
}

}  // namespace ftks
