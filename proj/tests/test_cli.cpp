#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "orthosteer/serialize.hpp"

namespace fs = std::filesystem;
using orthosteer::io::Json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and returns its exit code and stdout.
CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + ORTHOSTEER_CLI + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("orthosteer_cli_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PlanLegendreAmplitude) {
  const CliResult r = run("plan nhi --from 0,0,0 --to 0,0,1 --family legendre --interval -1,1");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["system"], "nhi");
  const Json& ph = j["phases"].back();
  EXPECT_NEAR(std::fabs(ph["inputs"][0][0]["scale"].get<double>()), std::sqrt(15.0 / 4.0), 1e-12);
  EXPECT_NEAR(std::fabs(ph["inputs"][1][0]["scale"].get<double>()), std::sqrt(15.0 / 4.0), 1e-12);
}

TEST_F(Cli, PlanThenVerify) {
  ASSERT_EQ(run("plan nhi --from 0,0,0 --to 0,0,1 --family legendre --out " + path("p.json")).code, 0);
  const CliResult v = run("verify --plan " + path("p.json"));
  EXPECT_EQ(v.code, 0);
  const auto pos = v.out.find("x3 error: ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LT(std::stod(v.out.substr(pos + 10)), 1e-6);
}

TEST_F(Cli, VerifyRejectsATamperedPlan) {
  ASSERT_EQ(run("plan nhi --to 1,2,3 --out " + path("p.json")).code, 0);
  Json j = Json::parse(slurp(path("p.json")));
  j["target"][2] = 3.5;
  write("bad.json", j.dump());
  EXPECT_EQ(run("verify --plan " + path("bad.json")).code, 1);
}

TEST_F(Cli, VerifyRoundTripsAcrossFamiliesAndSystems) {
  for (const std::string fam : {"legendre", "chebyshev_first", "chebyshev_second", "trig"}) {
    ASSERT_EQ(run("plan nhi --from 1,-2,0.5 --to -3,4,2 --family " + fam + " --out " + path("p.json")).code, 0);
    EXPECT_EQ(run("verify --plan " + path("p.json")).code, 0) << fam;
  }
  ASSERT_EQ(run("plan gnhi --m 3 --to 1,2,3,0.5,-0.5,0.25 --out " + path("g.json")).code, 0);
  EXPECT_EQ(run("verify --plan " + path("g.json")).code, 0);
  ASSERT_EQ(run("plan nhi --to 0,0,2 --cost weighted_l2 --out " + path("w.json")).code, 0);
  EXPECT_EQ(run("verify --plan " + path("w.json")).code, 0);
  ASSERT_EQ(run("plan nhi --to 0,0,2 --cost l1 --out " + path("l.json")).code, 0);
  EXPECT_EQ(run("verify --plan " + path("l.json")).code, 0);
  for (const std::string mode : {"constant", "weighted_rate", "underactuated"}) {
    ASSERT_EQ(run("plan so3 --from 0.1,0.2,0.3 --to 0.3,-0.1,1.2 --duration 1.5 --q 1,0.5 --mode " + mode +
                  " --out " + path("a.json"))
                  .code,
              0)
        << mode;
    EXPECT_EQ(run("verify --plan " + path("a.json")).code, 0) << mode;
  }
}

TEST_F(Cli, ZeroInputSimulationStaysAtStart) {
  write("zero.json", R"({"system": "nhi", "start": [0.5, -1.25, 2], "inputs": [[], []], "steps": 200})");
  const CliResult r = run("simulate --config " + path("zero.json"));
  ASSERT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "t,x1,x2,x3,u1,u2");
  int rows = 0;
  while (std::getline(ss, line)) {
    EXPECT_EQ(line.substr(line.find(',') + 1), "0.5,-1.25,2,0,0");
    ++rows;
  }
  EXPECT_EQ(rows, 201);
}

TEST_F(Cli, OutputsAreByteIdentical) {
  const std::string plan = "plan nhi --from 0.3,0.1,-2 --to 1,2,3 --family chebyshev_second --interval 0,1";
  const CliResult a = run(plan), b = run(plan);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  write("p.json", a.out);
  const CliResult s1 = run("simulate --plan " + path("p.json") + " --steps 300");
  const CliResult s2 = run("simulate --plan " + path("p.json") + " --steps 300");
  ASSERT_EQ(s1.code, 0);
  EXPECT_EQ(s1.out, s2.out);
  const CliResult f1 = run("fuel --compare legendre,trig,chebyshev_first");
  EXPECT_EQ(f1.out, run("fuel --compare legendre,trig,chebyshev_first").out);
  const CliResult u1 = run("plan so3 --to 0.2,0.1,1.1 --mode underactuated --duration 1.2");
  EXPECT_EQ(u1.out, run("plan so3 --to 0.2,0.1,1.1 --mode underactuated --duration 1.2").out);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("launch").code, 2);
  EXPECT_EQ(run("plan nhi --cost cheapest").code, 2);
  EXPECT_EQ(run("plan nhi --from 1,2").code, 2);
  EXPECT_EQ(run("simulate").code, 2);
  EXPECT_EQ(run("plan nhi --to 0,0,1 --family hermite").code, 1);
  EXPECT_EQ(run("plan nhi --to 0,0,1 --family legendre --pair 2,4").code, 1);
  EXPECT_EQ(run("plan so3 --duration -1").code, 1);
  EXPECT_EQ(run("verify --plan " + path("missing.json")).code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, PaperRepro) {
  const CliResult r = run("paper-repro");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("paper-deviation"), std::string::npos);
  EXPECT_EQ(r.out.find(" fail"), std::string::npos);
}

TEST_F(Cli, FuelReportAndCsv) {
  const CliResult r = run("fuel --compare legendre,trig --csv " + path("f.csv"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][0]["label"], "trig");
  EXPECT_NEAR(j["reports"][1]["min_j"].get<double>(), 3.3981, 1e-3);
  const std::string csv = slurp(path("f.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,odd_index,even_index,c1,c2,c,b1,b2,min_j,oracle_min_j");
}

TEST_F(Cli, OutputDirectoryOverride) {
  const std::string env = "ORTHOSTEER_OUT_DIR='" + dir_.string() + "'";
  ASSERT_EQ(run("plan nhi --to 0,0,1 --out plan.json", env).code, 0);
  ASSERT_TRUE(fs::exists(dir_ / "plan.json"));
  ASSERT_EQ(run("simulate --plan " + path("plan.json") + " --out traj.csv --plot-prefix fig", env).code, 0);
  for (const char* f : {"traj.csv", "fig_x3_vs_x1.csv", "fig_x2_vs_x1.csv", "fig_trace3d.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
}
