#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msdiff/grid.hpp"
#include "msdiff/maxwell_stefan.hpp"
#include "msdiff/moment_system.hpp"

namespace msdiff {

using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

// 17 significant digits, round-trippable.
std::string format_double(double x);

// `# key: value` metadata lines followed by I rows of I fields; the diagonal
// is left empty.
void write_matrix_csv(std::ostream& os, const Eigen::Ref<const Eigen::MatrixXd>& matrix, const CsvMetadata& metadata);
void write_matrix_csv(const Eigen::Ref<const Eigen::MatrixXd>& matrix, const CsvMetadata& metadata,
                      const std::filesystem::path& path);

// x, c_1..c_I, F_1..F_I per cell; fluxes averaged from the two bounding faces.
void write_ms_snapshot(std::ostream& os, const MixtureState& state, const Grid1D& grid,
                       const std::vector<std::string>& names, const CsvMetadata& metadata);

// x, c_1..c_I, u_1..u_I per cell; velocities averaged from the two bounding faces.
void write_kinetic_snapshot(std::ostream& os, const MomentState& state, const Grid1D& grid,
                            const std::vector<std::string>& names, const CsvMetadata& metadata);

void write_sweep_table(std::ostream& os, const SweepResult& result, const CsvMetadata& metadata);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

} // namespace msdiff
