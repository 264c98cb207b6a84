#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ftks/cli.hpp"
#include "support.hpp"

using namespace ftks;
using namespace ftks::testing;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ftks_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write_instance(const std::string& name, const Instance& inst) { return write(name, save_instance(inst)); }

  struct Run {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
  };

  template <typename Fn, typename Args>
  static Run run(Fn fn, const Args& args) {
    std::ostringstream out, err;
    const int code = fn(args, out, err);
    return {code, out.str(), err.str()};
  }

  Run solve(const std::string& path, cli::Algorithm a, bool with_oracle = false) {
    cli::SolveArgs args;
    args.instance_path = path;
    args.algorithm = a;
    args.oracle = with_oracle;
    return run(cli::cmd_solve, args);
  }

  Run verify(const std::string& inst_path, const std::string& doc) {
    cli::VerifyArgs args;
    args.instance_path = inst_path;
    args.solution_path = write("claim.json", doc);
    return run(cli::cmd_verify, args);
  }

  fs::path dir_;
};

const Instance kTrivial(1, 1, 1, 1, {1}, {0, 2, 2, 0});

}  // namespace

TEST_F(CliTest, GenIsReproducible) {
  cli::GenArgs gap;
  gap.kind = "gap";
  gap.k = 3;
  const Run a = run(cli::cmd_gen, gap);
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, run(cli::cmd_gen, gap).out);
  EXPECT_EQ(a.out, save_instance(gen_gap_instance(3, 1000)));

  cli::GenArgs limit;
  limit.kind = "limit";
  limit.t = 4;
  limit.k = 5;
  limit.distance = 1.0;
  const Instance lim = load_instance(run(cli::cmd_gen, limit).out);
  EXPECT_EQ(lim.distinct_levels(), 4);
  EXPECT_EQ(save_instance(lim), save_instance(gen_limit_instance(4, 5)));

  cli::GenArgs rnd;
  rnd.kind = "random";
  rnd.seed = 7;
  const Instance r1 = load_instance(run(cli::cmd_gen, rnd).out);
  EXPECT_EQ(instance_digest(r1), instance_digest(gen_random_instance(7, 8, 6, 2, 5, 2)));

  cli::GenArgs bad;
  bad.kind = "spiral";
  EXPECT_EQ(run(cli::cmd_gen, bad).code, cli::kInvalidInput);
  bad.kind = "gap";
  bad.k = 0;
  EXPECT_EQ(run(cli::cmd_gen, bad).code, cli::kInvalidInput);
}

TEST_F(CliTest, SolveTrivial) {
  const std::string path = write_instance("trivial.json", kTrivial);
  for (cli::Algorithm a : {cli::Algorithm::Fks, cli::Algorithm::Ufkso, cli::Algorithm::Fkso}) {
    const Run r = solve(path, a);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto doc = r.json();
    EXPECT_EQ(doc["command"], "solve");
    EXPECT_EQ(doc["solution"]["open"], nlohmann::json::array({0}));
    EXPECT_EQ(doc["solution"]["served"], nlohmann::json::array({0}));
    EXPECT_EQ(doc["solution"]["achieved"], 2.0);
    EXPECT_EQ(doc["results"][0]["status"], "solved");
    EXPECT_EQ(doc["args"]["seed"], nullptr);
    EXPECT_FALSE(doc.contains("wall_time_ms"));
  }
}

TEST_F(CliTest, SeedAndTimingAreEchoed) {
  cli::SolveArgs args;
  args.instance_path = write_instance("trivial.json", kTrivial);
  args.seed = 42;
  args.timing = true;
  const Run r = run(cli::cmd_solve, args);
  ASSERT_EQ(r.code, cli::kOk);
  const auto doc = r.json();
  EXPECT_EQ(doc["args"]["seed"], 42);
  EXPECT_TRUE(doc["wall_time_ms"].is_number());
}

TEST_F(CliTest, GapWithOracleRejectsOnlyTooSmallRadii) {
  const std::string path = write_instance("gap.json", gen_gap_instance(3, 1000));
  const Run r = solve(path, cli::Algorithm::Fkso, true);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = r.json();
  const auto& oracle = doc["oracle"];
  EXPECT_EQ(oracle["opt_radius"], 1000.0);
  EXPECT_EQ(doc["results"][0]["dilation_basis"], "oracle");
  EXPECT_EQ(doc["results"][0]["dilation"], 1.0);

  const int m = doc["instance"]["m"];
  std::map<double, int> coverage;
  for (const auto& p : oracle["coverage_curve"]) coverage[p["radius"]] = p["coverage"];
  bool saw_rejection = false;
  for (const auto& entry : doc["results"][0]["radius_log"]) {
    if (entry["status"] != "too_small") continue;
    saw_rejection = true;
    const double radius = entry["radius"];
    ASSERT_TRUE(coverage.count(radius));
    EXPECT_LT(coverage[radius], m) << "rejected radius " << radius << " is feasible";
  }
  EXPECT_TRUE(saw_rejection);
}

TEST_F(CliTest, UniformSolversWithinThreeOfOracle) {
  SeededSampler rng(301);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = random_uniform_instance(rng, rng.between(1, 2), rng.between(2, 4), 8, 6);
    const std::string path = write_instance("u.json", inst);
    for (cli::Algorithm a : {cli::Algorithm::Ufkso, cli::Algorithm::Fkso}) {
      const Run r = solve(path, a, true);
      ASSERT_EQ(r.code, cli::kOk) << r.err;
      const auto doc = r.json();
      const double achieved = doc["solution"]["achieved"];
      const double opt = doc["oracle"]["opt_radius"];
      ASSERT_TRUE(within_factor(achieved, 3.0, opt)) << to_string(a) << " trial " << trial;
    }
  }
}

TEST_F(CliTest, InvalidInputs) {
  const std::string mixed = write_instance("mixed.json", gen_limit_instance(2, 2));
  EXPECT_EQ(solve(mixed, cli::Algorithm::Ufkso).code, cli::kInvalidInput);

  const std::string broken = write("broken.json", R"({"n": 1, "f": 1, "k": 1, "m": 1, "ell": [1]})");
  EXPECT_EQ(solve(broken, cli::Algorithm::Fkso).code, cli::kInvalidInput);
  EXPECT_EQ(solve((dir_ / "missing.json").string(), cli::Algorithm::Fks).code, cli::kInvalidInput);

  cli::ExactArgs ex;
  ex.instance_path = broken;
  EXPECT_EQ(run(cli::cmd_exact, ex).code, cli::kInvalidInput);
}

TEST_F(CliTest, ExactOptima) {
  const std::pair<Instance, double> cases[] = {
      {kTrivial, 2.0}, {gen_limit_instance(3, 3), 1.0}, {gen_gap_instance(2, 1000), 1000.0}};
  for (const auto& [inst, opt] : cases) {
    cli::ExactArgs ex;
    ex.instance_path = write_instance("exact.json", inst);
    const Run r = run(cli::cmd_exact, ex);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto doc = r.json();
    EXPECT_EQ(doc["oracle"]["opt_radius"], opt);
    EXPECT_EQ(doc["solution"]["achieved"], opt);
    EXPECT_EQ(verify(ex.instance_path, r.out).code, cli::kOk);
  }
}

TEST_F(CliTest, ExactBudgetExceeded) {
  cli::ExactArgs ex;
  ex.instance_path = write_instance("big.json", gen_random_instance(1, 3, 20, 10, 2, 1));
  ex.max_subsets = 1000;
  const Run r = run(cli::cmd_exact, ex);
  EXPECT_EQ(r.code, cli::kBudgetExceeded);
  EXPECT_EQ(r.json()["oracle"]["required_subsets"], 184756);
}

TEST_F(CliTest, VerifyDetectsTampering) {
  const Instance inst = gen_gap_instance(2, 1000);
  const std::string path = write_instance("gap.json", inst);
  const Run solved = solve(path, cli::Algorithm::Fkso);
  ASSERT_EQ(solved.code, cli::kOk);

  const Run ok = verify(path, solved.out);
  EXPECT_EQ(ok.code, cli::kOk) << ok.out;
  EXPECT_TRUE(ok.json()["consistent"].get<bool>());

  // Claim radius 1 with the real solution: some served client is farther.
  nlohmann::json claim = solved.json()["solution"];
  claim["achieved"] = 1.0;
  const Run tampered = verify(path, claim.dump());
  EXPECT_EQ(tampered.code, cli::kCheckFailed);
  const nlohmann::json report = tampered.json();
  bool witnessed = false;
  for (const auto& c : report["checks"]) {
    if (c["name"] == "achieved") {
      EXPECT_FALSE(c["ok"].get<bool>());
      witnessed = c["detail"].contains("witness_client");
    }
  }
  EXPECT_TRUE(witnessed);

  // Too few served clients.
  nlohmann::json few = {{"open", {0, 1}}, {"served", {0}}};
  EXPECT_EQ(verify(path, few.dump()).code, cli::kCheckFailed);
  // Out-of-range facility.
  nlohmann::json oob = {{"open", {99}}, {"served", {0, 1, 2, 3, 4, 5}}};
  EXPECT_EQ(verify(path, oob.dump()).code, cli::kCheckFailed);
  // Missing fields.
  EXPECT_EQ(verify(path, R"({"open": [0]})").code, cli::kCheckFailed);
}

TEST_F(CliTest, EverySolveReportVerifies) {
  SeededSampler rng(302);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = make_instance(draw_params(rng, 8, 6, 4, 3, false));
    const std::string path = write_instance("r.json", inst);
    for (cli::Algorithm a : {cli::Algorithm::Fks, cli::Algorithm::Fkso}) {
      if (a == cli::Algorithm::Fks && inst.m() != static_cast<int>(inst.num_clients())) continue;
      const Run r = solve(path, a);
      ASSERT_EQ(r.code, cli::kOk) << r.err;
      ASSERT_NO_THROW(r.json());
      const Run v = verify(path, r.out);
      ASSERT_EQ(v.code, cli::kOk) << v.out;
    }
  }
}

TEST_F(CliTest, BenchSummaryShape) {
  cli::BenchArgs args;
  args.count = 3;
  const Run r = run(cli::cmd_bench, args);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["instances"].size(), 3u);
  for (const char* s : {"chain", "forest", "best"}) EXPECT_TRUE(doc["summary"].contains(s)) << s;
}
