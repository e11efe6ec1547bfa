#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "msdiff/csv_output.hpp"
#include "msdiff/errors.hpp"

using namespace msdiff;

namespace {

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST(FormatDouble, SeventeenSignificantDigits)
{
  EXPECT_EQ(format_double(1.0 / std::numbers::pi), "0.31830988618379069");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(MatrixCsv, LayoutWithEmptyDiagonal)
{
  Eigen::Matrix2d m;
  m << 0.0, 1.0 / std::numbers::pi, 1.0 / std::numbers::pi, 0.0;
  std::ostringstream os;
  write_matrix_csv(os, m, {{"quantity", "D"}, {"species", "A B"}});
  EXPECT_EQ(os.str(), "# quantity: D\n# species: A B\n,0.31830988618379069\n0.31830988618379069,\n");
}

TEST(MatrixCsv, RejectsEmptyOrNonSquare)
{
  std::ostringstream os;
  EXPECT_THROW(write_matrix_csv(os, Eigen::MatrixXd(0, 0), {}), ValidationError);
  EXPECT_THROW(write_matrix_csv(os, Eigen::MatrixXd::Ones(2, 3), {}), ValidationError);
}

TEST(MatrixCsv, RewritingGivesIdenticalFile)
{
  const auto dir = std::filesystem::temp_directory_path() / "msdiff_csv_roundtrip";
  std::filesystem::create_directories(dir);
  Eigen::Matrix3d m = Eigen::Matrix3d::Random();
  write_matrix_csv(m, {{"k", "v"}}, dir / "a.csv");
  write_matrix_csv(m, {{"k", "v"}}, dir / "b.csv");
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_FALSE(slurp(dir / "a.csv").empty());
}

TEST(MatrixCsv, UnwritablePathRaises)
{
  EXPECT_ANY_THROW(write_matrix_csv(Eigen::Matrix2d::Ones(), {}, "/nonexistent_dir/x/y.csv"));
}

TEST(SweepTable, BlankOrderOnFirstRow)
{
  SweepResult r;
  r.dt = 0.5;
  r.steps = 2;
  r.rows = {{0.2, 0.04, std::numeric_limits<double>::quiet_NaN(), 0.0}, {0.1, 0.01, 2.0, 0.0}};
  std::ostringstream os;
  write_sweep_table(os, r, {});
  EXPECT_EQ(os.str(), "# dt: 0.5\n# steps: 2\nepsilon,error,observed_order,max_momentum_exchange_imbalance\n"
                      "0.20000000000000001,0.040000000000000001,,0\n0.10000000000000001,0.01,2,0\n");
}

TEST(MsSnapshot, HeaderAndAveragedFluxes)
{
  Grid1D g;
  g.n_cells = 8;
  MixtureState s;
  s.time = 0.25;
  s.concentrations = Eigen::MatrixXd::Constant(2, 8, 0.5);
  s.fluxes = Eigen::MatrixXd::Zero(2, 9);
  s.fluxes(0, 0) = 1.0;
  s.fluxes(0, 1) = 3.0;
  std::ostringstream os;
  write_ms_snapshot(os, s, g, {"A", "B"}, {});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# time: 0.25");
  std::getline(in, line);
  EXPECT_EQ(line, "x,c_A,c_B,F_A,F_B");
  std::getline(in, line);
  EXPECT_EQ(line, "0.0625,0.5,0.5,2,0");
}
