#include "msdiff/grid.hpp"

#include <cmath>

#include "msdiff/errors.hpp"

namespace msdiff {

Boundary parse_boundary(const std::string& name)
{
  if (name == "periodic") return Boundary::periodic;
  if (name == "no_flux") return Boundary::no_flux;
  throw ValidationError("boundary must be 'periodic' or 'no_flux', got '" + name + "'");
}

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "no_flux"; }

Eigen::VectorXd Grid1D::cell_centers() const
{
  Eigen::VectorXd x(static_cast<Eigen::Index>(n_cells));
  for (std::size_t k = 0; k < n_cells; ++k) x(static_cast<Eigen::Index>(k)) = cell_center(k);
  return x;
}

Grid1D validate_grid(Grid1D grid)
{
  if (!(grid.x_max > grid.x_min)) throw ValidationError("grid: x_max must exceed x_min");
  if (grid.n_cells < 8) throw ValidationError("grid: n_cells must be >= 8");
  return grid;
}

double evaluate_profile(const SpeciesProfile& profile, const Grid1D& grid, double x)
{
  double value = 0.0;
  for (const auto& term : profile) {
    if (const auto* c = std::get_if<ConstantTerm>(&term)) {
      value += c->value;
    } else if (const auto* s = std::get_if<SineTerm>(&term)) {
      value += s->amplitude * std::sin(2.0 * M_PI * s->wavenumber * (x - grid.x_min) / grid.length() + s->phase);
    } else if (const auto* g = std::get_if<GaussianTerm>(&term)) {
      const double z = (x - g->center) / g->width;
      value += g->height * std::exp(-0.5 * z * z);
    }
  }
  return value;
}

Eigen::MatrixXd sample_profiles(const std::vector<SpeciesProfile>& profiles, const Grid1D& grid)
{
  Eigen::MatrixXd c(static_cast<Eigen::Index>(profiles.size()), static_cast<Eigen::Index>(grid.n_cells));
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t k = 0; k < grid.n_cells; ++k) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
        evaluate_profile(profiles[i], grid, grid.cell_center(k));
    }
  }
  return c;
}

double l2_norm(const Eigen::Ref<const Eigen::MatrixXd>& values, const Grid1D& grid)
{
  return std::sqrt(grid.dx() * values.squaredNorm());
}

} // namespace msdiff
