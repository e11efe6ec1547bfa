#include "msdiff/maxwell_stefan.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace msdiff {

Eigen::VectorXd solve_fluxes(const Eigen::Ref<const Eigen::VectorXd>& c_at_face,
                             const Eigen::Ref<const Eigen::VectorXd>& grad_c, const DiffusionMatrix& d,
                             double c_total)
{
  const auto n = c_at_face.size();
  if (n < 2 || grad_c.size() != n || static_cast<std::size_t>(n) != d.order()) {
    throw ValidationError("solve_fluxes: dimension mismatch");
  }
  if (!(c_total > 0.0)) throw ValidationError("solve_fluxes: c_total must be > 0");
  if ((c_at_face.array() < 0.0).any()) throw ValidationError("solve_fluxes: face concentrations must be >= 0");
  if (std::abs(c_at_face.sum() - c_total) > 1e-8 * c_total) {
    throw ValidationError("solve_fluxes: face concentrations do not sum to c_total");
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double inv = 1.0 / (c_total * d(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      a(i, i) += c_at_face(j) * inv;
      a(i, j) = -c_at_face(i) * inv;
    }
    rhs(i) = -grad_c(i);
  }
  a.row(n - 1).setOnes();
  rhs(n - 1) = 0.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw NumericalError("solve_fluxes: singular Maxwell-Stefan system (reciprocal condition estimate " +
                         std::to_string(rcond) + ")");
  }
  return lu.solve(rhs);
}

Eigen::MatrixXd face_fluxes(const Eigen::Ref<const Eigen::MatrixXd>& concentrations, const MaxwellStefanSystem& system)
{
  const Grid1D& grid = system.grid;
  const auto species = concentrations.rows();
  const auto cells = static_cast<Eigen::Index>(grid.n_cells);
  const auto faces = static_cast<Eigen::Index>(grid.n_faces());
  const double dx = grid.dx();

  Eigen::MatrixXd fluxes = Eigen::MatrixXd::Zero(species, faces);
  for (Eigen::Index f = 0; f < cells; ++f) {
    Eigen::Index left = f - 1;
    if (f == 0) {
      if (grid.boundary == Boundary::no_flux) continue;
      left = cells - 1;
    }
    const Eigen::VectorXd c_face = 0.5 * (concentrations.col(left) + concentrations.col(f));
    const Eigen::VectorXd grad = (concentrations.col(f) - concentrations.col(left)) / dx;
    fluxes.col(f) = solve_fluxes(c_face, grad, system.diffusion, system.total_concentration);
  }
  if (grid.boundary == Boundary::periodic) fluxes.col(faces - 1) = fluxes.col(0);
  return fluxes;
}

MixtureState make_state(Eigen::MatrixXd concentrations, const MaxwellStefanSystem& system, double time)
{
  const auto species = static_cast<std::size_t>(concentrations.rows());
  if (species != system.diffusion.order() || static_cast<std::size_t>(concentrations.cols()) != system.grid.n_cells) {
    throw ValidationError("make_state: concentration array has the wrong shape");
  }
  if ((concentrations.array() < 0.0).any()) throw ValidationError("make_state: concentrations must be >= 0");
  const Eigen::RowVectorXd totals = concentrations.colwise().sum();
  for (Eigen::Index k = 0; k < totals.size(); ++k) {
    if (std::abs(totals(k) - system.total_concentration) > kClosureTolerance) {
      throw ValidationError("make_state: concentrations in cell " + std::to_string(k) + " sum to " +
                            std::to_string(totals(k)) + ", expected the total concentration");
    }
  }
  MixtureState state;
  state.time = time;
  state.fluxes = face_fluxes(concentrations, system);
  state.concentrations = std::move(concentrations);
  return state;
}

double max_stable_dt(const MaxwellStefanSystem& system)
{
  const double dx = system.grid.dx();
  return 0.25 * dx * dx / system.diffusion.values.max_value();
}

void clamp_roundoff_negatives(Eigen::MatrixXd& concentrations, double c_total)
{
  for (Eigen::Index k = 0; k < concentrations.cols(); ++k) {
    auto cell = concentrations.col(k);
    if (cell.minCoeff() >= 0.0) continue;
    for (Eigen::Index i = 0; i < cell.size(); ++i) {
      if (cell(i) < -kNegativeClampTolerance) {
        throw NumericalError("negative concentration " + std::to_string(cell(i)) + " for species " +
                             std::to_string(i) + " in cell " + std::to_string(k));
      }
      if (cell(i) < 0.0) cell(i) = 0.0;
    }
    // Restore the cell total lost by clamping.
    cell *= c_total / cell.sum();
  }
}

MixtureState step(const MixtureState& state, const MaxwellStefanSystem& system, double dt)
{
  if (!(dt > 0.0)) throw ValidationError("step: dt must be > 0");
  const double bound = max_stable_dt(system);
  if (dt > bound * (1.0 + 1e-12)) {
    throw NumericalError("step: dt = " + std::to_string(dt) + " exceeds the stability bound " + std::to_string(bound));
  }
  const auto cells = static_cast<Eigen::Index>(system.grid.n_cells);
  const double ratio = dt / system.grid.dx();

  Eigen::MatrixXd next = state.concentrations -
                         ratio * (state.fluxes.rightCols(cells) - state.fluxes.leftCols(cells));
  clamp_roundoff_negatives(next, system.total_concentration);

  MixtureState out;
  out.time = state.time + dt;
  out.fluxes = face_fluxes(next, system);
  out.concentrations = std::move(next);
  return out;
}

namespace {

std::size_t step_count(double t_end, double dt)
{
  if (!(t_end >= 0.0)) throw ValidationError("run: t_end must be >= 0");
  if (!(dt > 0.0)) throw ValidationError("run: dt must be > 0");
  return static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
}

} // namespace

std::vector<MixtureState> run(const MixtureState& initial, const MaxwellStefanSystem& system, double t_end, double dt,
                              std::size_t output_every)
{
  std::vector<MixtureState> trajectory{initial};
  const std::size_t steps = step_count(t_end, dt);
  if (steps == 0) return trajectory;
  const double h = t_end / static_cast<double>(steps);
  MixtureState state = initial;
  for (std::size_t s = 1; s <= steps; ++s) {
    state = step(state, system, h);
    state.time = initial.time + h * static_cast<double>(s);
    if (s == steps || (output_every > 0 && s % output_every == 0)) trajectory.push_back(state);
  }
  return trajectory;
}

MixtureState run_to(const MixtureState& initial, const MaxwellStefanSystem& system, double t_end, double dt)
{
  const std::size_t steps = step_count(t_end, dt);
  if (steps == 0) return initial;
  const double h = t_end / static_cast<double>(steps);
  MixtureState state = initial;
  for (std::size_t s = 1; s <= steps; ++s) {
    state = step(state, system, h);
    state.time = initial.time + h * static_cast<double>(s);
  }
  return state;
}

} // namespace msdiff
