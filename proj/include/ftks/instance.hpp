#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ftks/errors.hpp"

namespace ftks {

using Client = std::size_t;
using Facility = std::size_t;
/// Index into the joint point order: clients first, then facilities.
using Point = std::size_t;

using ClientSet = std::vector<Client>;
using FacilitySet = std::vector<Facility>;

/// Relative slack allowed when checking the triangle inequality.
inline constexpr double kTriangleTolerance = 1e-9;

/// A fault-tolerant k-supplier with outliers instance.
///
/// Clients are 0..n-1 and facilities 0..f-1. The distance table is a dense
/// row-major (n+f)x(n+f) matrix over the joint point order. Construction does
/// not validate; call validate_instance() for untrusted data.
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t n, std::size_t f, int k, int m, std::vector<int> ell,
           std::vector<double> dist)
      : n_(n), f_(f), k_(k), m_(m), ell_(std::move(ell)), dist_(std::move(dist)) {}

  std::size_t num_clients() const noexcept { return n_; }
  std::size_t num_facilities() const noexcept { return f_; }
  std::size_t num_points() const noexcept { return n_ + f_; }
  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }

  int ell(Client v) const { return ell_[v]; }
  std::span<const int> ells() const noexcept { return ell_; }
  std::span<const double> dist_table() const noexcept { return dist_; }

  Point client_point(Client v) const noexcept { return v; }
  Point facility_point(Facility i) const noexcept { return n_ + i; }
  bool is_client_point(Point p) const noexcept { return p < n_; }

  double dist(Point p, Point q) const { return dist_[p * (n_ + f_) + q]; }
  double client_facility(Client v, Facility i) const { return dist(v, n_ + i); }
  double client_client(Client a, Client b) const { return dist(a, b); }

  /// Number of distinct fault-tolerance values (t).
  int distinct_levels() const {
    return static_cast<int>(std::set<int>(ell_.begin(), ell_.end()).size());
  }

  int max_ell() const { return ell_.empty() ? 0 : *std::max_element(ell_.begin(), ell_.end()); }

  ClientSet all_clients() const {
    ClientSet out(n_);
    for (std::size_t v = 0; v < n_; ++v) out[v] = v;
    return out;
  }
  FacilitySet all_facilities() const {
    FacilitySet out(f_);
    for (std::size_t i = 0; i < f_; ++i) out[i] = i;
    return out;
  }

  /// Same metric and tolerances with a different inlier target.
  Instance with_inlier_target(int m) const { return Instance(n_, f_, k_, m, ell_, dist_); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t f_ = 0;
  int k_ = 0;
  int m_ = 0;
  std::vector<int> ell_;
  std::vector<double> dist_;
};

/// Open facilities S and inliers T, with the radius the solver ran under.
struct Solution {
  FacilitySet open;
  ClientSet served;
  double radius_guess = 0.0;
  double achieved = 0.0;
  double dilation = 0.0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

namespace detail {

inline std::string point_name(const Instance& inst, Point p) {
  std::ostringstream os;
  if (inst.is_client_point(p)) {
    os << "c" << p;
  } else {
    os << "f" << (p - inst.num_clients());
  }
  return os.str();
}

}  // namespace detail

/// Checks every instance invariant; throws ValidationError naming the first
/// violated one. Triangle violations report the witnessing triple (a,b,c)
/// with d(a,c) > d(a,b) + d(b,c).
inline void validate_instance(const Instance& inst) {
  const std::size_t n = inst.num_clients();
  const std::size_t f = inst.num_facilities();
  const std::size_t p = n + f;
  auto fail = [](const char* inv, const std::string& msg) { throw ValidationError(inv, msg); };

  if (n == 0) fail("clients", "instance has no clients");
  if (f == 0) fail("facilities", "instance has no facilities");
  if (inst.dist_table().size() != p * p) {
    fail("dist_size", "distance table has " + std::to_string(inst.dist_table().size()) +
                          " entries, expected " + std::to_string(p * p));
  }
  if (inst.ells().size() != n) fail("ell_size", "ell has wrong length");
  if (inst.k() < 1) fail("k", "k must be positive");
  if (static_cast<std::size_t>(inst.k()) > f) fail("k", "k exceeds the number of facilities");
  if (inst.m() < 1 || static_cast<std::size_t>(inst.m()) > n) fail("m", "m must lie in [1, n]");
  for (Client v = 0; v < n; ++v) {
    if (inst.ell(v) < 1 || inst.ell(v) > inst.k()) {
      fail("ell", "ell of c" + std::to_string(v) + " = " + std::to_string(inst.ell(v)) +
                      " outside [1, k]");
    }
  }
  for (Point a = 0; a < p; ++a) {
    if (inst.dist(a, a) != 0.0) fail("zero_diagonal", "d(" + detail::point_name(inst, a) + ", itself) != 0");
    for (Point b = 0; b < p; ++b) {
      const double d = inst.dist(a, b);
      if (!std::isfinite(d) || d < 0.0) {
        fail("nonnegative", "d(" + detail::point_name(inst, a) + ", " + detail::point_name(inst, b) +
                                ") is negative or not finite");
      }
      if (d != inst.dist(b, a)) {
        fail("symmetry", "d(" + detail::point_name(inst, a) + ", " + detail::point_name(inst, b) +
                             ") is not symmetric");
      }
    }
  }
  for (Point b = 0; b < p; ++b) {
    for (Point a = 0; a < p; ++a) {
      const double ab = inst.dist(a, b);
      for (Point c = 0; c < p; ++c) {
        const double via = ab + inst.dist(b, c);
        const double direct = inst.dist(a, c);
        if (direct - via > kTriangleTolerance * std::max({1.0, direct, via})) {
          throw ValidationError("triangle",
                                "triangle violated at (" + detail::point_name(inst, a) + ", " +
                                    detail::point_name(inst, b) + ", " + detail::point_name(inst, c) + ")",
                                {a, b, c});
        }
      }
    }
  }
}

}  // namespace ftks
