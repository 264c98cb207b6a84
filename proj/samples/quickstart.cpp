// Builds a two-gadget gap instance, solves it three ways and compares with
// the brute-force optimum.
#include <iostream>

#include "ftks/ftks.hpp"

int main() {
  const ftks::Instance inst = ftks::gen_gap_instance(2, 50.0);
  std::cout << "n=" << inst.num_clients() << " f=" << inst.num_facilities() << " k=" << inst.k()
            << " m=" << inst.m() << " t=" << inst.distinct_levels() << "\n";

  const auto greedy = ftks::solve_fks(inst.with_inlier_target(inst.num_clients()));
  std::cout << "all clients served:  radius " << greedy.solution.achieved << "\n";

  const auto fkso = ftks::solve_fkso(inst);
  std::cout << "with outliers:       radius " << fkso.solution.achieved << " (" << to_string(fkso.partition.builder)
            << ", rho " << fkso.partition.rho << ")\n";

  const auto best = ftks::oracle::exact_opt(inst);
  std::cout << "exact optimum:       radius " << best.opt_radius << "\n";
}
