#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"

namespace ftks {

/// Deterministic sampler over std::mt19937_64. The engine's output sequence is
/// fixed by the standard; the distribution mappings below are written out so
/// that instances are identical across standard library implementations.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// All-pairs shortest paths over a weighted edge list; the minimal metric
// completion of the given distances.
inline std::vector<double> shortest_path_closure(std::size_t points,
                                                 const std::vector<std::pair<std::pair<Point, Point>, double>>& edges) {
  std::vector<double> d(points * points, kUnreachable);
  for (std::size_t p = 0; p < points; ++p) d[p * points + p] = 0.0;
  for (const auto& [e, w] : edges) {
    auto [a, b] = e;
    d[a * points + b] = std::min(d[a * points + b], w);
    d[b * points + a] = std::min(d[b * points + a], w);
  }
  for (std::size_t via = 0; via < points; ++via) {
    for (std::size_t a = 0; a < points; ++a) {
      const double av = d[a * points + via];
      if (av == kUnreachable) continue;
      for (std::size_t b = 0; b < points; ++b) {
        const double cand = av + d[via * points + b];
        if (cand < d[a * points + b]) d[a * points + b] = cand;
      }
    }
  }
  return d;
}

}  // namespace detail

/// The weak-LP integrality-gap family: k identical gadgets, each with k big
/// clients (ell = k), one small client (ell = 1) and k facilities, every
/// gadget client at distance 1 from every gadget facility. Gadgets sit at
/// mutual distance M. m = 2k.
///
/// Client order per gadget g: big clients g(k+1) .. g(k+1)+k-1, then the small
/// client g(k+1)+k. Facilities of gadget g are gk .. gk+k-1.
inline Instance gen_gap_instance(int k, double M = 1000.0) {
  if (k < 1) throw ArgumentError("gap instance needs k >= 1");
  if (!(M > 10.0) || !std::isfinite(M)) throw ArgumentError("gap instance needs finite M > 10");
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t n = kk * (kk + 1);
  const std::size_t f = kk * kk;
  const std::size_t p = n + f;

  std::vector<std::pair<std::pair<Point, Point>, double>> edges;
  for (std::size_t g = 0; g < kk; ++g) {
    for (std::size_t c = 0; c <= kk; ++c) {
      for (std::size_t i = 0; i < kk; ++i) edges.push_back({{g * (kk + 1) + c, n + g * kk + i}, 1.0});
    }
  }
  std::vector<double> dist = detail::shortest_path_closure(p, edges);
  for (double& d : dist) {
    if (d == detail::kUnreachable) d = M;
  }

  std::vector<int> ell(n, k);
  for (std::size_t g = 0; g < kk; ++g) ell[g * (kk + 1) + kk] = 1;
  return Instance(n, f, k, 2 * k, std::move(ell), std::move(dist));
}

/// Client index of gadget g's small client in gen_gap_instance(k, ...).
inline Client gap_small_client(int k, int gadget) {
  return static_cast<Client>(gadget) * static_cast<Client>(k + 1) + static_cast<Client>(k);
}

/// The good-partition limiting chain: clients v_1..v_t with ell(v_a) = a,
/// consecutive clients at distance 2, and a group F_a of k facilities at
/// distance 1 from v_a. All other distances are shortest paths. m = 1.
/// Distances are multiplied by `unit`.
///
/// Client v_a has id a-1; F_a is facilities (a-1)k .. (a-1)k+k-1.
inline Instance gen_limit_instance(int t, int k, double unit = 1.0) {
  if (t < 1) throw ArgumentError("limit instance needs t >= 1");
  if (k < t) throw ArgumentError("limit instance needs k >= t");
  if (!(unit > 0.0) || !std::isfinite(unit)) throw ArgumentError("limit instance needs a positive unit");
  const std::size_t n = static_cast<std::size_t>(t);
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t f = n * kk;

  std::vector<std::pair<std::pair<Point, Point>, double>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    if (a + 1 < n) edges.push_back({{a, a + 1}, 2.0 * unit});
    for (std::size_t i = 0; i < kk; ++i) edges.push_back({{a, n + a * kk + i}, unit});
  }
  std::vector<int> ell(n);
  std::iota(ell.begin(), ell.end(), 1);
  return Instance(n, f, k, 1, std::move(ell), detail::shortest_path_closure(n + f, edges));
}

/// Coverage preset on the limit chain: cov(v_a) = 1 / (a * H_t).
inline std::vector<double> limit_instance_cov(int t) {
  double harmonic = 0.0;
  for (int a = 1; a <= t; ++a) harmonic += 1.0 / a;
  std::vector<double> cov(static_cast<std::size_t>(t));
  for (int a = 1; a <= t; ++a) cov[static_cast<std::size_t>(a - 1)] = 1.0 / (a * harmonic);
  return cov;
}

/// Random Euclidean instance: clients and facilities uniform in a 100x100
/// box; fault tolerances use exactly t distinct levels from [1, k].
inline Instance gen_random_instance(std::uint64_t seed, int n, int f_count, int k, int m, int t) {
  if (n < 1 || f_count < 1 || k < 1 || m < 1 || t < 1) throw ArgumentError("random instance parameters must be positive");
  if (t > k) throw ArgumentError("t must not exceed k");
  if (t > n) throw ArgumentError("t must not exceed n");
  if (m > n) throw ArgumentError("m must not exceed n");
  if (k > f_count) throw ArgumentError("k must not exceed the facility count");

  SeededSampler rng(seed);
  const std::size_t p = static_cast<std::size_t>(n + f_count);
  std::vector<std::pair<double, double>> xy(p);
  for (auto& [x, y] : xy) {
    x = 100.0 * rng.uniform01();
    y = 100.0 * rng.uniform01();
  }
  std::vector<double> dist(p * p, 0.0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      const double d = std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
      dist[a * p + b] = d;
      dist[b * p + a] = d;
    }
  }

  std::vector<int> levels(static_cast<std::size_t>(k));
  std::iota(levels.begin(), levels.end(), 1);
  rng.shuffle(levels);
  levels.resize(static_cast<std::size_t>(t));

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> ell(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    ell[order[i]] = i < levels.size() ? levels[i] : levels[rng.below(levels.size())];
  }
  return Instance(static_cast<std::size_t>(n), static_cast<std::size_t>(f_count), k, m, std::move(ell), std::move(dist));
}

}  // namespace ftks
