#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "msdiff/cli.hpp"

using namespace msdiff;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = MSDIFF_CONFIG_DIR;

struct Result {
  int status;
  std::string out, err;
};

Result call(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int status = dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("msdiff_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST(Cli, CoeffsWritesDiffusionMatrix)
{
  const fs::path dir = scratch("coeffs");
  const Result r = call({"coeffs", "--config", (kConfigs / "example.yaml").string(), "--out", (dir / "D.csv").string(),
                         "--delta-out", (dir / "F.csv").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string d = slurp(dir / "D.csv");
  EXPECT_NE(d.find("# quantity: binary_diffusion_coefficient"), std::string::npos);
  EXPECT_NE(slurp(dir / "F.csv").find("# quantity: friction_coefficient"), std::string::npos);
}

TEST(Cli, OracleCheckPrintsCsvWithRelDiff)
{
  const Result r = call({"oracle-check", "--config", (kConfigs / "example.yaml").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("pair,kernel,closed_form,oracle,rel_diff,status"), std::string::npos);
  EXPECT_NE(r.out.find("n1_series"), std::string::npos);
  EXPECT_NE(r.out.find("discrepancy"), std::string::npos);
}

TEST(Cli, SweepWithExplicitEpsList)
{
  const fs::path dir = scratch("sweep");
  const Result r = call({"sweep", "--config", (kConfigs / "sweep.yaml").string(), "--eps", "0.2,0.1", "--out",
                         (dir / "s.csv").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string s = slurp(dir / "s.csv");
  EXPECT_NE(s.find("epsilon,error,observed_order"), std::string::npos);
  EXPECT_NE(s.find("\n0.20000000000000001,"), std::string::npos);
  EXPECT_NE(s.find("\n0.10000000000000001,"), std::string::npos);
  EXPECT_EQ(s.find("\n0.050000000000000003,"), std::string::npos);
}

TEST(Cli, MsAndKineticRunsWriteSnapshots)
{
  const fs::path dir = scratch("runs");
  Result r = call({"ms-run", "--config", (kConfigs / "example.yaml").string(), "--out-dir", (dir / "ms").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "ms" / "ms_00000.csv"));
  r = call({"kinetic-run", "--config", (kConfigs / "example.yaml").string(), "--eps", "0.1", "--out-dir",
            (dir / "k").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(slurp(dir / "k" / "kinetic_00000.csv").find("# epsilon: 0.10000000000000001"), std::string::npos);
}

TEST(Cli, RepeatedRunsAreBitIdentical)
{
  const fs::path dir = scratch("determinism");
  const std::string cfg = (kConfigs / "example.yaml").string();
  for (const char* name : {"a.csv", "b.csv"}) {
    ASSERT_EQ(call({"coeffs", "--config", cfg, "--out", (dir / name).string()}).status, 0);
  }
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}

TEST(Cli, FailuresPrintOneJsonLine)
{
  const fs::path dir = scratch("errors");
  for (const auto& args : std::vector<std::vector<std::string>>{
         {"bogus"},
         {},
         {"coeffs", "--config", "/nonexistent.yaml", "--out", "x.csv"},
         {"coeffs", "--config", (kConfigs / "example.yaml").string()},
         {"kinetic-run", "--config", (kConfigs / "example.yaml").string(), "--eps", "1.5", "--out-dir",
          (dir / "k").string()},
       }) {
    const Result r = call(args);
    EXPECT_NE(r.status, 0);
    ASSERT_FALSE(r.err.empty());
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j.at("status"), "error");
    EXPECT_TRUE(j.contains("kind"));
    EXPECT_TRUE(j.contains("message"));
  }
}

TEST(Cli, ConfigErrorsCarryWhere)
{
  const fs::path dir = scratch("bad_config");
  {
    std::ofstream f(dir / "bad.yaml");
    f << "mixture:\n  temperature: 1\n  species: [{name: A, mass: 1}, {name: B, mass: 1}]\n"
         "kernel: {coefficients: [1]}\nangular: []\n";
  }
  const Result r = call({"coeffs", "--config", (dir / "bad.yaml").string(), "--out", (dir / "D.csv").string()});
  EXPECT_EQ(r.status, 3);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("kind"), "config");
  EXPECT_NE(j.at("where").get<std::string>().find("angular"), std::string::npos);
}

TEST(Cli, HelpExitsCleanly)
{
  const Result r = call({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("oracle-check"), std::string::npos);
}
