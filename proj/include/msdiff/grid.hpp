#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace msdiff {

enum class Boundary { periodic, no_flux };

Boundary parse_boundary(const std::string& name);
std::string to_string(Boundary b);

// Uniform cell-centered grid. Faces are numbered 0..n_cells, face f between
// cells f-1 and f; under periodic boundaries faces 0 and n_cells coincide.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_cells = 64;
  Boundary boundary = Boundary::periodic;

  double length() const noexcept { return x_max - x_min; }
  double dx() const noexcept { return length() / static_cast<double>(n_cells); }
  std::size_t n_faces() const noexcept { return n_cells + 1; }
  double cell_center(std::size_t k) const noexcept { return x_min + (static_cast<double>(k) + 0.5) * dx(); }
  double face_position(std::size_t f) const noexcept { return x_min + static_cast<double>(f) * dx(); }
  Eigen::VectorXd cell_centers() const;
};

Grid1D validate_grid(Grid1D grid);

// Initial profile building blocks; a species profile is the sum of its terms.
struct ConstantTerm {
  double value = 0.0;
};
// amplitude * sin(2 pi wavenumber (x - x_min) / L + phase)
struct SineTerm {
  double amplitude = 0.0;
  double wavenumber = 1.0;
  double phase = 0.0;
};
// height * exp(-(x - center)^2 / (2 width^2))
struct GaussianTerm {
  double center = 0.0;
  double width = 1.0;
  double height = 0.0;
};

using ProfileTerm = std::variant<ConstantTerm, SineTerm, GaussianTerm>;
using SpeciesProfile = std::vector<ProfileTerm>;

double evaluate_profile(const SpeciesProfile& profile, const Grid1D& grid, double x);

// I x n_cells matrix of cell-center values.
Eigen::MatrixXd sample_profiles(const std::vector<SpeciesProfile>& profiles, const Grid1D& grid);

// Discrete L2 norm sqrt(dx sum_k v_k^2) over cells, accumulated over rows.
double l2_norm(const Eigen::Ref<const Eigen::MatrixXd>& values, const Grid1D& grid);

} // namespace msdiff
