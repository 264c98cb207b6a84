#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace ftks::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class SimplexStatus { Optimal, Infeasible, Unbounded, PivotLimit };

/// Zero/sign tests for a scalar type. Exact types compare against zero;
/// floating point uses an absolute pivot tolerance.
template <typename Scalar>
struct ScalarTraits {
  static bool is_zero(const Scalar& x) { return x == 0; }
  static bool is_positive(const Scalar& x) { return x > 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr double kTol = 1e-10;
  static bool is_zero(double x) { return std::abs(x) <= kTol; }
  static bool is_positive(double x) { return x > kTol; }
};

template <typename Scalar>
struct Row {
  std::vector<std::pair<std::size_t, Scalar>> terms;
  Sense sense = Sense::LessEqual;
  Scalar rhs{};
};

/// maximize objective . x  subject to rows, x >= 0.
template <typename Scalar>
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Row<Scalar>> rows;
  std::vector<Scalar> objective;  // empty = pure feasibility
};

template <typename Scalar>
struct Result {
  SimplexStatus status = SimplexStatus::Infeasible;
  std::vector<Scalar> x;
  Scalar objective{};
  std::size_t pivots = 0;
};

/// Dense-tableau two-phase primal simplex with Bland's rule. Bland's rule
/// guarantees termination; with an exact Scalar the verdict is exact.
template <typename Scalar>
class Simplex {
  using T = ScalarTraits<Scalar>;

 public:
  explicit Simplex(const Problem<Scalar>& p, std::size_t pivot_limit = 1'000'000)
      : problem_(p), pivot_limit_(pivot_limit) {}

  Result<Scalar> solve() {
    build();
    Result<Scalar> out;

    // Phase 1: maximize -(sum of artificials).
    std::vector<Scalar> phase1(cols_, Scalar(0));
    for (std::size_t c = art_begin_; c < cols_; ++c) phase1[c] = Scalar(-1);
    load_objective(phase1);
    SimplexStatus st = iterate(out.pivots);
    if (st == SimplexStatus::PivotLimit) {
      out.status = st;
      return out;
    }
    if (!T::is_zero(z_)) {
      out.status = SimplexStatus::Infeasible;
      return out;
    }
    drive_out_artificials(out.pivots);
    allowed_end_ = art_begin_;

    // Phase 2.
    std::vector<Scalar> phase2(cols_, Scalar(0));
    for (std::size_t j = 0; j < problem_.objective.size(); ++j) phase2[j] = problem_.objective[j];
    load_objective(phase2);
    st = iterate(out.pivots);
    if (st != SimplexStatus::Optimal) {
      out.status = st;
      return out;
    }

    out.status = SimplexStatus::Optimal;
    out.x.assign(problem_.num_vars, Scalar(0));
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (basis_[i] < problem_.num_vars) out.x[basis_[i]] = rhs_[i];
    }
    out.objective = z_;
    return out;
  }

 private:
  void build() {
    const std::size_t n = problem_.num_vars;
    const std::size_t m = problem_.rows.size();
    std::size_t slack = 0, art = 0;
    for (const auto& r : problem_.rows) {
      const Sense s = normalized_sense(r);
      if (s != Sense::Equal) ++slack;
      if (s != Sense::LessEqual) ++art;
    }
    art_begin_ = n + slack;
    cols_ = art_begin_ + art;
    allowed_end_ = cols_;
    tab_.assign(m, std::vector<Scalar>(cols_, Scalar(0)));
    rhs_.assign(m, Scalar(0));
    basis_.assign(m, 0);

    std::size_t next_slack = n, next_art = art_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = problem_.rows[i];
      const bool flip = T::is_positive(-r.rhs);
      const Sense s = normalized_sense(r);
      for (const auto& [j, a] : r.terms) tab_[i][j] += flip ? Scalar(-a) : a;
      rhs_[i] = flip ? Scalar(-r.rhs) : r.rhs;
      if (s == Sense::LessEqual) {
        tab_[i][next_slack] = Scalar(1);
        basis_[i] = next_slack++;
      } else {
        if (s == Sense::GreaterEqual) tab_[i][next_slack++] = Scalar(-1);
        tab_[i][next_art] = Scalar(1);
        basis_[i] = next_art++;
      }
    }
  }

  Sense normalized_sense(const Row<Scalar>& r) const {
    if (!T::is_positive(-r.rhs) || r.sense == Sense::Equal) return r.sense;
    return r.sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
  }

  // Reduced costs d_j = c_j - c_B . column_j and objective value c_B . rhs.
  void load_objective(const std::vector<Scalar>& c) {
    d_ = c;
    z_ = Scalar(0);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      const Scalar& cb = c[basis_[i]];
      if (T::is_zero(cb)) continue;
      z_ += cb * rhs_[i];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!T::is_zero(tab_[i][j])) d_[j] -= cb * tab_[i][j];
      }
    }
  }

  SimplexStatus iterate(std::size_t& pivots) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < allowed_end_; ++j) {
        if (T::is_positive(d_[j])) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return SimplexStatus::Optimal;

      std::size_t leave = tab_.size();
      Scalar best{};
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (!T::is_positive(tab_[i][enter])) continue;
        Scalar ratio = rhs_[i] / tab_[i][enter];
        if (leave == tab_.size() || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == tab_.size()) return SimplexStatus::Unbounded;
      if (++pivots > pivot_limit_) return SimplexStatus::PivotLimit;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const Scalar p = tab_[r][e];
    for (auto& a : tab_[r]) {
      if (!T::is_zero(a)) a /= p;
    }
    rhs_[r] /= p;
    tab_[r][e] = Scalar(1);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i == r || T::is_zero(tab_[i][e])) continue;
      const Scalar f = tab_[i][e];
      eliminate(tab_[i], rhs_[i], f, r);
      tab_[i][e] = Scalar(0);
    }
    if (!T::is_zero(d_[e])) {
      const Scalar f = d_[e];
      Scalar dz{};
      eliminate(d_, dz, f, r);
      z_ -= dz;
      d_[e] = Scalar(0);
    }
    basis_[r] = e;
  }

  void eliminate(std::vector<Scalar>& row, Scalar& rhs, const Scalar& f, std::size_t r) {
    const auto& pr = tab_[r];
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!T::is_zero(pr[j])) row[j] -= f * pr[j];
    }
    rhs -= f * rhs_[r];
  }

  // Pivot zero-valued artificials out of the basis; drop rows that are
  // linear combinations of the others.
  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < tab_.size();) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      std::size_t col = art_begin_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (!T::is_zero(tab_[i][j])) {
          col = j;
          break;
        }
      }
      if (col == art_begin_) {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      ++pivots;
      pivot(i, col);
      ++i;
    }
  }

  const Problem<Scalar>& problem_;
  std::size_t pivot_limit_;
  std::size_t cols_ = 0, art_begin_ = 0, allowed_end_ = 0;
  std::vector<std::vector<Scalar>> tab_;
  std::vector<Scalar> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Scalar> d_;
  Scalar z_{};
};

template <typename Scalar>
Result<Scalar> solve(const Problem<Scalar>& p, std::size_t pivot_limit = 1'000'000) {
  return Simplex<Scalar>(p, pivot_limit).solve();
}

}  // namespace ftks::lp
