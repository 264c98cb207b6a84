#include <gtest/gtest.h>

#include "support.hpp"

using namespace ftks;
using namespace ftks::testing;

namespace {

void expect_assignment_invariants(const Instance& inst, const RepAssignment& rep) {
  std::vector<int> seen(inst.num_clients(), 0);
  for (const auto& [j, kids] : rep.child) {
    for (Client v : kids) {
      ++seen[v];
      EXPECT_GE(rep.cov.cov[j], rep.cov.cov[v]);
      EXPECT_LE(inst.client_client(v, j), 2.0 * rep.radius);
    }
  }
  const ClientSet support = rep.cov.support();
  for (Client v = 0; v < inst.num_clients(); ++v) {
    const bool positive = std::binary_search(support.begin(), support.end(), v);
    EXPECT_EQ(seen[v], positive ? 1 : 0) << "client " << v;
  }
  EXPECT_TRUE(is_well_separated(inst, rep.reps, rep.radius));
}

}  // namespace

TEST(FilterReps, ZeroCoverageGivesNoReps) {
  const Instance inst = gen_random_instance(1, 5, 4, 2, 3, 1);
  const RepAssignment rep = filter_reps(inst, {std::vector<double>(5, 0.0)}, 10.0);
  EXPECT_TRUE(rep.reps.empty());
  EXPECT_FALSE(check_wlcut(rep, 2, 1).has_value());
}

TEST(FilterReps, SingleGadgetCollapsesToSmallClient) {
  // One gadget of the k=2 family with every level set to 1.
  const Instance gap = gen_gap_instance(2, 1000);
  const Instance inst = with_uniform_ell(gap, 1);
  std::vector<double> cov(inst.num_clients(), 0.0);
  const Client small = gap_small_client(2, 0);
  cov[0] = cov[1] = 0.5;
  cov[small] = 1.0;
  const RepAssignment rep = filter_reps(inst, {cov}, 1.0);
  EXPECT_EQ(rep.reps, ClientSet{small});
  EXPECT_EQ(rep.child.at(small), (ClientSet{0, 1, small}));
  expect_assignment_invariants(inst, rep);
}

TEST(FilterReps, TiesGoToSmallerIds) {
  const Instance inst = with_uniform_ell(gen_gap_instance(2, 1000), 1);
  const RepAssignment rep = filter_reps(inst, {std::vector<double>(inst.num_clients(), 0.5)}, 1.0);
  EXPECT_EQ(rep.reps, (ClientSet{0, 3}));
}

TEST(FilterReps, RandomInvariants) {
  SeededSampler rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_uniform_instance(rng, rng.between(1, 2), 2, 10, 6);
    std::vector<double> cov(inst.num_clients());
    for (double& c : cov) c = rng.below(3) == 0 ? 0.0 : rng.uniform01();
    const auto radii = candidate_radii(inst);
    expect_assignment_invariants(inst, filter_reps(inst, {cov}, radii[rng.below(radii.size())]));
  }
}

TEST(OpenUniform, SingleRepOpensItsNearest) {
  const Instance inst = with_uniform_ell(gen_gap_instance(2, 1000), 2);
  RepAssignment rep;
  rep.reps = {2};
  rep.child[2] = {0, 1, 2};
  rep.radius = 1.0;
  const UniformOpening open = open_facilities_uniform(inst, rep, 2, 2);
  EXPECT_EQ(open.open, nearest_set(inst, 2, inst.all_facilities(), 2));
  EXPECT_EQ(open.served, (ClientSet{0, 1, 2}));
}

TEST(OpenUniform, FloorLimitsReps) {
  const Instance inst = with_uniform_ell(gen_random_instance(2, 8, 6, 5, 4, 1), 2);
  RepAssignment rep;
  rep.reps = {0, 1, 2, 3};
  rep.child = {{0, {0}}, {1, {1, 4, 5}}, {2, {2, 6}}, {3, {3, 7}}};
  const UniformOpening open = open_facilities_uniform(inst, rep, 5, 2);
  EXPECT_EQ(open.chosen_reps, (ClientSet{1, 2}));  // sizes 3, 2, 2: id 2 beats id 3
  EXPECT_LE(open.open.size(), 4u);
}

TEST(CheckWlcut, ForcedViolation) {
  const int k = 5, ell = 2;
  RepAssignment rep;
  rep.cov.cov = {1.0, 1.0, 1.0, 0.0};
  rep.reps = {0, 1, 2};
  const auto cut = check_wlcut(rep, k, ell);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->kind, CutKind::WLCut);
  EXPECT_EQ(cut->rhs, 2.0);
  EXPECT_EQ(cut->lambda, (std::vector<int>{1, 1, 1, 0}));
  EXPECT_TRUE(cut->violated_by(rep.cov.cov));

  rep.reps = {0, 1};
  EXPECT_FALSE(check_wlcut(rep, k, ell).has_value());
}

TEST(CheckWlcut, NeverFiresWhenLevelDividesBudget) {
  // With ell | k the ball rows already imply the floor inequality.
  SeededSampler rng(52);
  int lp_points = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int ell = rng.between(1, 2);
    const int k = ell * rng.between(1, 2);
    const Instance inst = random_uniform_instance(rng, ell, k, 9, 6);
    for (double r : candidate_radii(inst)) {
      const LpResult lp = solve_lp(build_weak_lp(inst, r));
      if (!lp.feasible()) continue;
      ++lp_points;
      const RepAssignment rep = filter_reps(inst, lp.coverage(inst.num_clients()), r);
      ASSERT_FALSE(check_wlcut(rep, k, ell).has_value());
    }
  }
  EXPECT_GT(lp_points, 0);
}

TEST(Ufkso, Trivial) {
  const Instance inst(1, 1, 1, 1, {1}, {0, 2, 2, 0});
  const UfksoResult res = solve_ufkso(inst);
  EXPECT_EQ(res.solution.served, ClientSet{0});
  EXPECT_EQ(res.solution.achieved, 2.0);
}

TEST(Ufkso, RejectsMixedLevels) {
  EXPECT_THROW(solve_ufkso(gen_limit_instance(2, 2)), ArgumentError);
}

TEST(Ufkso, SeedElevenWithinThreeOfOptimum) {
  const Instance inst = with_uniform_ell(gen_random_instance(11, 10, 7, 4, 7, 1), 2);
  const UfksoResult res = solve_ufkso(inst);
  const double opt = oracle::exact_opt(inst).opt_radius;
  EXPECT_TRUE(solution_consistent(inst, res.solution));
  EXPECT_TRUE(within_factor(res.solution.achieved, 3.0, opt));
}

TEST(Ufkso, ThreeApproximationProperty) {
  SeededSampler rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    const int ell = rng.between(1, 3);
    const int k = rng.between(ell, 4);
    const Instance inst = random_uniform_instance(rng, ell, k, 10, 7);
    const UfksoResult res = solve_ufkso(inst);
    const double opt = oracle::exact_opt(inst).opt_radius;
    ASSERT_TRUE(solution_consistent(inst, res.solution)) << "trial " << trial;
    ASSERT_TRUE(within_factor(res.solution.achieved, 3.0, opt)) << "trial " << trial;
    ASSERT_LE(res.solution.achieved, 3.0 * res.solution.radius_guess + 1e-9);
    ASSERT_LE(res.solution.radius_guess, opt);
    for (const Cut& c : res.cuts_emitted) {
      ASSERT_EQ(c.kind, CutKind::WLCut);
      ASSERT_EQ(c.rhs, k / ell);
    }
  }
}

TEST(Ufkso, KSupplierWithOutliersCase) {
  // ell = 1 everywhere: the plain k-supplier-with-outliers setting.
  SeededSampler rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_uniform_instance(rng, 1, rng.between(1, 3), 10, 6);
    const UfksoResult res = solve_ufkso(inst);
    ASSERT_TRUE(within_factor(res.solution.achieved, 3.0, oracle::exact_opt(inst).opt_radius));
  }
}

TEST(Ufkso, CutsStrictlyExcludePreviousPoint) {
  // Replays the loop by hand on instances where floor cuts fire and checks
  // that each re-solve moves away from the point that produced the cut.
  SeededSampler rng(55);
  int fired = 0;
  for (int trial = 0; trial < 200 && fired < 5; ++trial) {
    const Instance inst = random_uniform_instance(rng, 2, 3, 10, 7);
    for (double r : candidate_radii(inst)) {
      const LpModel model = build_weak_lp(inst, r);
      CutPool pool;
      for (int it = 0; it < 20; ++it) {
        const LpResult lp = solve_lp(model, pool);
        if (!lp.feasible()) break;
        const CoverageVector cov = lp.coverage(inst.num_clients());
        for (const Cut& c : pool) ASSERT_FALSE(c.violated_by(cov.cov));
        auto cut = check_wlcut(filter_reps(inst, cov, r), inst.k(), 2);
        if (!cut) break;
        ASSERT_TRUE(cut->violated_by(cov.cov));
        ASSERT_TRUE(std::find(pool.begin(), pool.end(), *cut) == pool.end());
        pool.push_back(*cut);
        ++fired;
      }
    }
  }
  EXPECT_GT(fired, 0);
}
