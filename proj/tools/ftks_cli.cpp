// Command-line front end: solve, exact, verify, gen, bench.
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ftks/cli.hpp"

int main(int argc, char** argv) {
  using namespace ftks;
  using namespace ftks::cli;

  CLI::App app{"fault-tolerant k-supplier with outliers"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "run an approximation algorithm on an instance");
  s->add_option("instance", solve.instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  const std::map<std::string, Algorithm> algorithms{
      {"fks", Algorithm::Fks}, {"ufkso", Algorithm::Ufkso}, {"fkso", Algorithm::Fkso}};
  s->add_option("-a,--algorithm", solve.algorithm, "fks | ufkso | fkso")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case))
      ->option_text("NAME (default fkso)");
  const std::map<std::string, Strategy> strategies{
      {"chain", Strategy::Chain}, {"forest", Strategy::Forest}, {"best", Strategy::Best}};
  s->add_option("-s,--strategy", solve.strategy, "partition builder for fkso: chain | forest | best")
      ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case))
      ->option_text("NAME (default best)");
  s->add_option("-r,--radius", solve.radius, "run a single radius guess instead of the full search");
  s->add_option("--seed", solve.seed, "recorded in the report for reproducibility");
  s->add_flag("--oracle", solve.oracle, "also compute the exact optimum and report the ratio");
  s->add_flag("--trace", solve.trace, "per-iteration round-or-cut log on stderr");
  s->add_flag("--timing", solve.timing, "include wall time in the report");
  s->add_option("--max-subsets", solve.max_subsets, "oracle enumeration budget");
  s->add_option("-j,--jobs", solve.jobs, "oracle worker threads")->check(CLI::PositiveNumber);

  ExactArgs exact;
  auto* e = app.add_subcommand("exact", "brute-force optimum");
  e->add_option("instance", exact.instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  e->add_option("--max-subsets", exact.max_subsets, "enumeration budget");
  e->add_option("-j,--jobs", exact.jobs, "worker threads")->check(CLI::PositiveNumber);
  e->add_flag("--timing", exact.timing, "include wall time in the report");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "recheck a solution or a solve report against an instance");
  v->add_option("instance", verify.instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  v->add_option("solution", verify.solution_path, "solution or report JSON")->required()->check(CLI::ExistingFile);

  GenArgs gen;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "write a generated instance");
  g->add_option("kind", gen.kind, "gap | limit | random")->required()->check(CLI::IsMember({"gap", "limit", "random"}));
  g->add_option("-k", gen.k, "budget (gap: gadget size)");
  g->add_option("-t", gen.t, "number of distinct levels");
  g->add_option("-d,--distance", gen.distance, "gap: cross-gadget distance; limit: unit length");
  g->add_option("--seed", gen.seed, "random: seed");
  g->add_option("-n", gen.n, "random: clients");
  g->add_option("-f", gen.f, "random: facilities");
  g->add_option("-m", gen.m, "random: inlier target");
  g->add_option("-o,--output", gen_out, "output file (default stdout)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "fkso strategies against the exact optimum on random instances");
  b->add_option("-t", bench.t, "distinct levels");
  b->add_option("--count", bench.count, "number of instances");
  b->add_option("--seed", bench.seed, "suite seed");
  b->add_option("-n", bench.n, "clients");
  b->add_option("-f", bench.f, "facilities");
  b->add_option("-k", bench.k, "budget");
  b->add_option("--max-subsets", bench.max_subsets, "oracle enumeration budget");
  b->add_flag("--timing", bench.timing, "include wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (*s) return cmd_solve(solve, std::cout, std::cerr);
  if (*e) return cmd_exact(exact, std::cout, std::cerr);
  if (*v) return cmd_verify(verify, std::cout, std::cerr);
  if (*b) return cmd_bench(bench, std::cout, std::cerr);
  if (gen_out.empty()) return cmd_gen(gen, std::cout, std::cerr);
  std::ofstream file(gen_out);
  if (!file) {
    std::cerr << "error: cannot write " << gen_out << "\n";
    return kInvalidInput;
  }
  return cmd_gen(gen, file, std::cerr);
}
