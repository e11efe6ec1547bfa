#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "msdiff/config.hpp"
#include "msdiff/errors.hpp"

using namespace msdiff;

namespace {

const char* kMinimal = R"(
mixture:
  temperature: 1.0
  species:
    - {name: A, mass: 1.0}
    - {name: B, mass: 2.0}
kernel:
  coefficients: [1.0]
angular:
  - {pair: [A, B], constant: 0.5}
)";

std::string error_of(const std::string& text, const std::filesystem::path& base = {})
{
  try {
    parse_config_string(text, base);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "no error";
}

} // namespace

TEST(Config, MinimalAppliesDefaults)
{
  const RunConfig cfg = parse_config_string(kMinimal);
  EXPECT_EQ(cfg.mixture.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.mixture.boltzmann_k, 1.0);
  EXPECT_DOUBLE_EQ(cfg.mixture.total_concentration, 1.0);
  EXPECT_DOUBLE_EQ(cfg.angular.l1_norm(0, 1), 1.0);
  EXPECT_FALSE(cfg.solver.has_value());
  EXPECT_EQ(cfg.sweep.epsilon, (std::vector<double>{0.2, 0.1, 0.05}));
  EXPECT_EQ(cfg.oracle.nodes_per_axis, 40);
}

TEST(Config, MissingAngularPairNamesThePair)
{
  const std::string text = R"(
mixture:
  temperature: 1.0
  species: [{name: A, mass: 1}, {name: B, mass: 2}, {name: C, mass: 3}]
kernel: {coefficients: [1.0]}
angular:
  - {pair: [A, B], constant: 0.5}
  - {pair: [B, C], l1_norm: 1.0}
)";
  const std::string msg = error_of(text);
  EXPECT_NE(msg.find("angular"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(A, C)"), std::string::npos) << msg;
}

TEST(Config, HardSphereFitRequest)
{
  const std::string text = R"(
mixture:
  temperature: 1.0
  species: [{name: A, mass: 1}, {name: B, mass: 2}]
kernel:
  hard_sphere_fit: {r_max: 4, degree: 6}
angular:
  - {pair: [A, B], constant: 0.5}
)";
  const RunConfig cfg = parse_config_string(text);
  ASSERT_TRUE(cfg.kernel.fit.has_value());
  EXPECT_EQ(cfg.kernel.kernel.truncation_order(), 6u);
  EXPECT_GT(cfg.kernel.fit->max_abs_error, 0.0);
  EXPECT_LT(cfg.kernel.fit->max_abs_error, 0.05 * cfg.kernel.fit->r_max);
  EXPECT_DOUBLE_EQ(cfg.kernel.validation_r_max, 4.0);
}

TEST(Config, SyntaxErrorReportsLine)
{
  const std::string msg = error_of("mixture:\n  temperature: [1.0\n  species: x\n");
  EXPECT_NE(msg.find("line"), std::string::npos) << msg;
}

TEST(Config, SemanticErrorsCarryFieldPaths)
{
  std::string text = kMinimal;
  EXPECT_NE(error_of(std::string(kMinimal) + "bogus: 1\n").find("config.bogus"), std::string::npos);
  text.replace(text.find("mass: 2.0"), 9, "mass: -2.0");
  EXPECT_NE(error_of(text).find("mixture"), std::string::npos);
  text = kMinimal;
  text.replace(text.find("[A, B]"), 6, "[A, Z]");
  EXPECT_NE(error_of(text).find("angular[0].pair[1]"), std::string::npos) << error_of(text);
  text = kMinimal;
  text.replace(text.find("temperature: 1.0"), 16, "temperature: hot");
  EXPECT_NE(error_of(text).find("mixture.temperature"), std::string::npos) << error_of(text);
  text = kMinimal;
  text.replace(text.find("coefficients: [1.0]"), 19, "coefficients: [1.0, -1.0]");
  EXPECT_NE(error_of(text).find("kernel"), std::string::npos);
}

TEST(Config, SolverProfilesMustCloseTheMixture)
{
  const std::string base = std::string(kMinimal) + R"(
solver:
  grid: {n_cells: 16, boundary: no_flux}
  t_end: 0.1
  initial:
    A: [{constant: 0.5}, {sine: {amplitude: 0.1}}]
)";
  EXPECT_NE(error_of(base + "    B: [{constant: 0.5}, {sine: {amplitude: -0.1}}]\n").find("no error"), std::string::npos);
  EXPECT_NE(error_of(base + "    B: [{constant: 0.4}]\n").find("sum to total_concentration"), std::string::npos);
  EXPECT_NE(error_of(base).find("missing profile for species 'B'"), std::string::npos);
  const RunConfig cfg = parse_config_string(base + "    B: [{constant: 0.5}, {sine: {amplitude: -0.1}}]\n");
  ASSERT_TRUE(cfg.solver.has_value());
  EXPECT_EQ(cfg.solver->grid.boundary, Boundary::no_flux);
  EXPECT_EQ(cfg.solver->grid.n_cells, 16u);
  EXPECT_EQ(cfg.solver->output_every, 100u);
}

TEST(Config, AngularTableFromCsv)
{
  const auto dir = std::filesystem::temp_directory_path() / "msdiff_config_table";
  std::filesystem::create_directories(dir);
  {
    std::ofstream t(dir / "b.csv");
    t << "eta,b\n-1,0.5\n-0.5,0.25\n0,0.1\n0.5,0.25\n1,0.5\n";
  }
  std::string text = kMinimal;
  text.replace(text.find("constant: 0.5"), 13, "table: b.csv");
  const RunConfig cfg = parse_config_string(text, dir);
  EXPECT_GT(cfg.angular.l1_norm(0, 1), 0.0);
  {
    std::ofstream t(dir / "b.csv");
    t << "eta,b\n-1,0.5\n0,0.1\n1,0.4\n";
  }
  EXPECT_NE(error_of(text, dir).find("angular[0]"), std::string::npos) << error_of(text, dir);
}

TEST(Config, ShippedExamplesParse)
{
  for (const char* name : {"example.yaml", "sweep.yaml", "duncan_toor.yaml"}) {
    EXPECT_NO_THROW(parse_config(std::filesystem::path(MSDIFF_CONFIG_DIR) / name)) << name;
  }
}

TEST(Config, MissingFile)
{
  EXPECT_THROW(parse_config("/nonexistent/run.yaml"), ConfigError);
}
