#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"

namespace ftks {

namespace detail {

// Facilities of `pool` ordered by distance to v; ties by ascending id.
inline FacilitySet by_distance(const Instance& inst, Client v, std::span<const Facility> pool) {
  FacilitySet order(pool.begin(), pool.end());
  std::sort(order.begin(), order.end(), [&](Facility a, Facility b) {
    const double da = inst.client_facility(v, a);
    const double db = inst.client_facility(v, b);
    return da != db ? da < db : a < b;
  });
  return order;
}

inline void check_rank(std::size_t rank, std::size_t available) {
  if (rank < 1 || rank > available) {
    throw RankOutOfRange("rank " + std::to_string(rank) + " outside [1, " + std::to_string(available) + "]");
  }
}

}  // namespace detail

/// d_a(v,S): distance from v to its a-th closest facility in S.
inline double dist_rank(const Instance& inst, Client v, std::span<const Facility> S, std::size_t a) {
  detail::check_rank(a, S.size());
  std::vector<double> d;
  d.reserve(S.size());
  for (Facility i : S) d.push_back(inst.client_facility(v, i));
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(a - 1), d.end());
  return d[a - 1];
}

/// N_a(v,S): the a facilities of S closest to v, returned in ascending id.
inline FacilitySet nearest_set(const Instance& inst, Client v, std::span<const Facility> S, std::size_t a) {
  if (a == 0) return {};
  detail::check_rank(a, S.size());
  FacilitySet order = detail::by_distance(inst, v, S);
  order.resize(a);
  std::sort(order.begin(), order.end());
  return order;
}

/// Closed ball: members of `pool` within distance r of `center`.
inline std::vector<Point> ball(const Instance& inst, Point center, double r, std::span<const Point> pool) {
  std::vector<Point> out;
  for (Point x : pool) {
    if (inst.dist(center, x) <= r) out.push_back(x);
  }
  return out;
}

/// Facilities within distance r of client v, as facility ids.
inline FacilitySet facilities_within(const Instance& inst, Client v, double r) {
  FacilitySet out;
  for (Facility i = 0; i < inst.num_facilities(); ++i) {
    if (inst.client_facility(v, i) <= r) out.push_back(i);
  }
  return out;
}

/// True iff every distinct pair of X is at distance strictly greater than 2r.
inline bool is_well_separated(const Instance& inst, std::span<const Client> X, double r) {
  for (std::size_t a = 0; a < X.size(); ++a) {
    for (std::size_t b = a + 1; b < X.size(); ++b) {
      if (X[a] != X[b] && !(inst.client_client(X[a], X[b]) > 2.0 * r)) return false;
    }
  }
  return true;
}

/// Sorted distinct client-to-facility distances. The optimum radius of any
/// instance is one of them.
inline std::vector<double> candidate_radii(const Instance& inst) {
  std::vector<double> radii;
  radii.reserve(inst.num_clients() * inst.num_facilities());
  for (Client v = 0; v < inst.num_clients(); ++v) {
    for (Facility i = 0; i < inst.num_facilities(); ++i) radii.push_back(inst.client_facility(v, i));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

/// d_{ell_v}(v, F): the smallest radius at which v can be served at all.
inline double service_radius(const Instance& inst, Client v) {
  const FacilitySet all = inst.all_facilities();
  return dist_rank(inst, v, all, static_cast<std::size_t>(inst.ell(v)));
}

/// max over v in T of d_{ell_v}(v, S). Zero for empty T.
inline double achieved_radius(const Instance& inst, std::span<const Facility> S, std::span<const Client> T) {
  double worst = 0.0;
  for (Client v : T) worst = std::max(worst, dist_rank(inst, v, S, static_cast<std::size_t>(inst.ell(v))));
  return worst;
}

/// Packages (S, T) with its recomputed radius and dilation against r.
inline Solution make_solution(const Instance& inst, FacilitySet open, ClientSet served, double r) {
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  std::sort(served.begin(), served.end());
  served.erase(std::unique(served.begin(), served.end()), served.end());
  Solution sol;
  sol.achieved = achieved_radius(inst, open, served);
  sol.open = std::move(open);
  sol.served = std::move(served);
  sol.radius_guess = r;
  sol.dilation = r > 0.0 ? sol.achieved / r : 0.0;
  return sol;
}

}  // namespace ftks
