#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ftks/errors.hpp"
#include "ftks/instance.hpp"
#include "ftks/metric.hpp"
#include "ftks/simplex.hpp"

namespace ftks {

using lp::Sense;

/// Feasibility tolerance for LP points; also the cov support threshold.
inline constexpr double kLpTolerance = 1e-7;

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

struct LpConstraint {
  std::string name;
  std::vector<std::pair<std::size_t, double>> terms;
  Sense sense = Sense::GreaterEqual;
  double rhs = 0.0;
};

enum class LpObjective { Feasibility, MaximizeCoverage };

/// A linear system over [0,1]-bounded variables. The first `num_cov`
/// variables are the coverage variables cov_0..cov_{n-1}; cuts refer to them.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<LpConstraint> constraints;
  LpObjective objective = LpObjective::MaximizeCoverage;
  std::size_t num_cov = 0;
  double radius = 0.0;
};

enum class CutKind { WLCut, LambdaCut };

/// sum_v lambda_v cov_v <= rhs.
struct Cut {
  std::vector<int> lambda;
  double rhs = 0.0;
  CutKind kind = CutKind::LambdaCut;

  double lhs(const std::vector<double>& cov) const {
    double s = 0.0;
    for (std::size_t v = 0; v < lambda.size(); ++v) s += lambda[v] * cov[v];
    return s;
  }
  bool violated_by(const std::vector<double>& cov) const { return lhs(cov) > rhs + kLpTolerance; }

  friend bool operator==(const Cut&, const Cut&) = default;
};

using CutPool = std::vector<Cut>;

/// Fractional inlier indicator per client.
struct CoverageVector {
  std::vector<double> cov;

  double total() const {
    double s = 0.0;
    for (double c : cov) s += c;
    return s;
  }
  /// Clients with cov_v > kLpTolerance, ascending.
  ClientSet support() const {
    ClientSet out;
    for (Client v = 0; v < cov.size(); ++v) {
      if (cov[v] > kLpTolerance) out.push_back(v);
    }
    return out;
  }
};

enum class LpStatus { Feasible, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;

  bool feasible() const { return status == LpStatus::Feasible; }
  CoverageVector coverage(std::size_t num_cov) const {
    return {std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(num_cov))};
  }
};

enum class LpBackend { ExactRational, Double };

namespace detail {

inline bool served_possible(const Instance& inst, Client v, double r) {
  return static_cast<int>(facilities_within(inst, v, r).size()) >= inst.ell(v);
}

inline void add_cov_variables(LpModel& model, const Instance& inst) {
  for (Client v = 0; v < inst.num_clients(); ++v) model.variables.push_back({"cov_" + std::to_string(v), 0.0, 1.0});
  model.num_cov = inst.num_clients();
}

inline void add_inlier_rows(LpModel& model, const Instance& inst, double r) {
  LpConstraint total{"inliers", {}, Sense::GreaterEqual, static_cast<double>(inst.m())};
  for (Client v = 0; v < inst.num_clients(); ++v) total.terms.push_back({v, 1.0});
  model.constraints.push_back(std::move(total));
  for (Client v = 0; v < inst.num_clients(); ++v) {
    if (!served_possible(inst, v, r)) {
      model.constraints.push_back({"unservable_" + std::to_string(v), {{v, 1.0}}, Sense::Equal, 0.0});
    }
  }
}

template <typename Scalar>
Scalar to_scalar(double x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x;
  } else {
    return Scalar(x);
  }
}

template <typename Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x;
  } else {
    return x.get_d();
  }
}

template <typename Scalar>
lp::Problem<Scalar> lower(const LpModel& model, const CutPool& cuts) {
  lp::Problem<Scalar> p;
  p.num_vars = model.variables.size();
  for (const auto& c : model.constraints) {
    lp::Row<Scalar> row;
    for (const auto& [j, a] : c.terms) row.terms.push_back({j, to_scalar<Scalar>(a)});
    row.sense = c.sense;
    row.rhs = to_scalar<Scalar>(c.rhs);
    p.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const auto& var = model.variables[j];
    if (var.lower != 0.0) throw PreconditionViolated("variable " + var.name + " must have lower bound 0");
    if (std::isfinite(var.upper)) p.rows.push_back({{{j, Scalar(1)}}, Sense::LessEqual, to_scalar<Scalar>(var.upper)});
  }
  for (const auto& cut : cuts) {
    lp::Row<Scalar> row;
    for (std::size_t v = 0; v < cut.lambda.size(); ++v) {
      if (cut.lambda[v] != 0) row.terms.push_back({v, Scalar(cut.lambda[v])});
    }
    row.sense = Sense::LessEqual;
    row.rhs = to_scalar<Scalar>(cut.rhs);
    p.rows.push_back(std::move(row));
  }
  if (model.objective == LpObjective::MaximizeCoverage) {
    p.objective.assign(p.num_vars, Scalar(0));
    for (std::size_t v = 0; v < model.num_cov; ++v) p.objective[v] = Scalar(1);
  }
  return p;
}

inline double constraint_slack(const LpConstraint& c, const std::vector<double>& x) {
  double lhs = 0.0;
  for (const auto& [j, a] : c.terms) lhs += a * x[j];
  switch (c.sense) {
    case Sense::LessEqual:
      return c.rhs - lhs;
    case Sense::GreaterEqual:
      return lhs - c.rhs;
    case Sense::Equal:
      return -std::abs(lhs - c.rhs);
  }
  return 0.0;
}

}  // namespace detail

/// Smallest slack of `x` over bounds, constraints and cuts; negative means
/// violated. Independent of the solver.
inline double min_slack(const LpModel& model, const CutPool& cuts, const std::vector<double>& x) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    worst = std::min({worst, x[j] - model.variables[j].lower, model.variables[j].upper - x[j]});
  }
  for (const auto& c : model.constraints) worst = std::min(worst, detail::constraint_slack(c, x));
  const std::vector<double> cov(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(model.num_cov));
  for (const auto& cut : cuts) worst = std::min(worst, cut.rhs - cut.lhs(cov));
  return worst;
}

/// Solves model + cuts. Feasible points are rechecked in double precision and
/// rejected with NumericalFailure if any slack is below -kLpTolerance.
inline LpResult solve_lp(const LpModel& model, const CutPool& cuts = {},
                         LpBackend backend = LpBackend::ExactRational) {
  for (const auto& cut : cuts) {
    if (cut.lambda.size() > model.num_cov) throw PreconditionViolated("cut refers to a missing coverage variable");
  }
  LpResult out;
  auto finish = [&](const auto& res) {
    using Scalar = std::decay_t<decltype(res.objective)>;
    if (res.status == lp::SimplexStatus::Infeasible) {
      out.status = LpStatus::Infeasible;
      return;
    }
    if (res.status != lp::SimplexStatus::Optimal) throw NumericalFailure("simplex did not reach a verdict");
    out.status = LpStatus::Feasible;
    out.values.clear();
    for (const Scalar& v : res.x) out.values.push_back(detail::to_double(v));
    out.objective = detail::to_double(res.objective);
  };
  if (backend == LpBackend::ExactRational) {
    finish(lp::solve(detail::lower<mpq_class>(model, cuts)));
  } else {
    finish(lp::solve(detail::lower<double>(model, cuts), 200'000));
  }
  if (out.feasible() && min_slack(model, cuts, out.values) < -kLpTolerance) {
    throw NumericalFailure("LP point fails the independent feasibility recheck");
  }
  return out;
}

/// Natural LP at radius r over cov_v and x_i: at least m covered, at most k
/// open, each client's ball holds ell_v * cov_v open mass, and clients with
/// fewer than ell_v facilities within r are fixed to 0. For uniform ell this
/// is the uniform relaxation; otherwise its per-client generalization.
inline LpModel build_weak_lp(const Instance& inst, double r) {
  LpModel model;
  model.radius = r;
  detail::add_cov_variables(model, inst);
  const std::size_t n = inst.num_clients();
  for (Facility i = 0; i < inst.num_facilities(); ++i) model.variables.push_back({"x_" + std::to_string(i), 0.0, 1.0});

  detail::add_inlier_rows(model, inst, r);
  LpConstraint budget{"budget", {}, Sense::LessEqual, static_cast<double>(inst.k())};
  for (Facility i = 0; i < inst.num_facilities(); ++i) budget.terms.push_back({n + i, 1.0});
  model.constraints.push_back(std::move(budget));
  for (Client v = 0; v < n; ++v) {
    LpConstraint ball_row{"ball_" + std::to_string(v), {}, Sense::GreaterEqual, 0.0};
    for (Facility i : facilities_within(inst, v, r)) ball_row.terms.push_back({n + i, 1.0});
    ball_row.terms.push_back({v, -static_cast<double>(inst.ell(v))});
    model.constraints.push_back(std::move(ball_row));
  }
  return model;
}

/// Coverage-only polytope at radius r: sum cov >= m, 0 <= cov <= 1, cov_v = 0
/// for clients unservable at r, plus every cut of the pool.
inline LpModel build_cov_polytope(const Instance& inst, double r, const CutPool& cuts = {}) {
  LpModel model;
  model.radius = r;
  detail::add_cov_variables(model, inst);
  detail::add_inlier_rows(model, inst, r);
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Cut& cut = cuts[c];
    LpConstraint row{(cut.kind == CutKind::WLCut ? "wlcut_" : "lambda_") + std::to_string(c), {}, Sense::LessEqual, cut.rhs};
    for (Client v = 0; v < cut.lambda.size(); ++v) {
      if (cut.lambda[v] != 0) row.terms.push_back({v, static_cast<double>(cut.lambda[v])});
    }
    model.constraints.push_back(std::move(row));
  }
  return model;
}

/// Human-readable LP text: one "c_<name>: a x + ... <sense> b" line per row.
inline std::string to_lp_text(const LpModel& model, const CutPool& cuts = {}) {
  std::ostringstream os;
  os << (model.objective == LpObjective::MaximizeCoverage ? "maximize sum cov" : "feasibility") << "\n";
  auto row_text = [&](const std::string& name, const std::vector<std::pair<std::size_t, double>>& terms, Sense s,
                      double rhs) {
    os << "c_" << name << ":";
    bool first = true;
    for (const auto& [j, a] : terms) {
      os << (first ? " " : " + ") << a << " " << model.variables[j].name;
      first = false;
    }
    if (first) os << " 0";
    os << (s == Sense::LessEqual ? " <= " : s == Sense::GreaterEqual ? " >= " : " = ") << rhs << "\n";
  };
  for (const auto& c : model.constraints) row_text(c.name, c.terms, c.sense, c.rhs);
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t v = 0; v < cuts[c].lambda.size(); ++v) {
      if (cuts[c].lambda[v] != 0) terms.push_back({v, static_cast<double>(cuts[c].lambda[v])});
    }
    row_text("pool_" + std::to_string(c), terms, Sense::LessEqual, cuts[c].rhs);
  }
  os << "bounds:";
  for (const auto& v : model.variables) os << " " << v.lower << " <= " << v.name << " <= " << v.upper << ";";
  os << "\n";
  return os.str();
}

}  // namespace ftks
