#include "msdiff/csv_output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "msdiff/errors.hpp"

namespace msdiff {

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_metadata(std::ostream& os, const CsvMetadata& metadata)
{
  for (const auto& [key, value] : metadata) os << "# " << key << ": " << value << '\n';
}

std::string join_header(const std::string& first, const std::vector<std::string>& names,
                        std::initializer_list<const char*> prefixes)
{
  std::string out = first;
  for (const char* prefix : prefixes) {
    for (const auto& n : names) out += std::string(",") + prefix + n;
  }
  return out;
}

} // namespace

void write_matrix_csv(std::ostream& os, const Eigen::Ref<const Eigen::MatrixXd>& matrix, const CsvMetadata& metadata)
{
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
    throw ValidationError("write_matrix_csv: matrix must be square and non-empty");
  }
  write_metadata(os, metadata);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) os << ',';
      if (i != j) os << format_double(matrix(i, j));
    }
    os << '\n';
  }
}

void write_matrix_csv(const Eigen::Ref<const Eigen::MatrixXd>& matrix, const CsvMetadata& metadata,
                      const std::filesystem::path& path)
{
  std::ostringstream os;
  write_matrix_csv(os, matrix, metadata);
  write_text_file(path, os.str());
}

void write_ms_snapshot(std::ostream& os, const MixtureState& state, const Grid1D& grid,
                       const std::vector<std::string>& names, const CsvMetadata& metadata)
{
  write_metadata(os, metadata);
  os << "# time: " << format_double(state.time) << '\n';
  os << join_header("x", names, {"c_", "F_"}) << '\n';
  for (std::size_t k = 0; k < grid.n_cells; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    os << format_double(grid.cell_center(k));
    for (Eigen::Index i = 0; i < state.concentrations.rows(); ++i) os << ',' << format_double(state.concentrations(i, col));
    for (Eigen::Index i = 0; i < state.fluxes.rows(); ++i) {
      os << ',' << format_double(0.5 * (state.fluxes(i, col) + state.fluxes(i, col + 1)));
    }
    os << '\n';
  }
}

void write_kinetic_snapshot(std::ostream& os, const MomentState& state, const Grid1D& grid,
                            const std::vector<std::string>& names, const CsvMetadata& metadata)
{
  write_metadata(os, metadata);
  os << "# time: " << format_double(state.time) << '\n';
  os << "# epsilon: " << format_double(state.epsilon) << '\n';
  os << join_header("x", names, {"c_", "u_"}) << '\n';
  for (std::size_t k = 0; k < grid.n_cells; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    os << format_double(grid.cell_center(k));
    for (Eigen::Index i = 0; i < state.concentrations.rows(); ++i) os << ',' << format_double(state.concentrations(i, col));
    for (Eigen::Index i = 0; i < state.velocities.rows(); ++i) {
      os << ',' << format_double(0.5 * (state.velocities(i, col) + state.velocities(i, col + 1)));
    }
    os << '\n';
  }
}

void write_sweep_table(std::ostream& os, const SweepResult& result, const CsvMetadata& metadata)
{
  write_metadata(os, metadata);
  os << "# dt: " << format_double(result.dt) << '\n';
  os << "# steps: " << result.steps << '\n';
  os << "epsilon,error,observed_order,max_momentum_exchange_imbalance\n";
  for (const auto& row : result.rows) {
    os << format_double(row.epsilon) << ',' << format_double(row.error) << ',';
    if (!std::isnan(row.observed_order)) os << format_double(row.observed_order);
    os << ',' << format_double(row.max_momentum_exchange_imbalance) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << contents;
  if (!file.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace msdiff
