#include "msdiff/moment_system.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace msdiff {

MomentSystem make_moment_system(const Grid1D& grid, const MixtureSpec& spec, const DeltaMatrix& delta_tilde)
{
  if (delta_tilde.values.order() != spec.size()) throw ValidationError("make_moment_system: size mismatch");
  return {validate_grid(grid), spec.masses(), spec.kT(), plain_delta_matrix(delta_tilde)};
}

MomentState make_moment_state(Eigen::MatrixXd concentrations, const Grid1D& grid, double epsilon, double time)
{
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw ValidationError("moment state: epsilon must lie in (0, 1)");
  if (static_cast<std::size_t>(concentrations.cols()) != grid.n_cells) {
    throw ValidationError("moment state: concentration array has the wrong shape");
  }
  if ((concentrations.array() < 0.0).any()) throw ValidationError("moment state: concentrations must be >= 0");
  MomentState s;
  s.time = time;
  s.epsilon = epsilon;
  s.velocities = Eigen::MatrixXd::Zero(concentrations.rows(), static_cast<Eigen::Index>(grid.n_faces()));
  s.concentrations = std::move(concentrations);
  return s;
}

Eigen::VectorXd theta_eval(const Eigen::Ref<const Eigen::VectorXd>& c, const Eigen::Ref<const Eigen::VectorXd>& u,
                           const Eigen::Ref<const Eigen::MatrixXd>& delta)
{
  const auto n = c.size();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      theta(i) += delta(i, j) * (c(i) * c(j) * u(j) - c(i) * c(j) * u(i));
    }
  }
  return theta;
}

namespace {

struct FaceStencil {
  Eigen::Index left = -1;
  Eigen::Index right = -1;
  bool wall = false;
};

FaceStencil stencil(const Grid1D& grid, Eigen::Index f)
{
  const auto cells = static_cast<Eigen::Index>(grid.n_cells);
  if (f == 0 || f == cells) {
    if (grid.boundary == Boundary::no_flux) return {f == 0 ? 0 : cells - 1, f == 0 ? 0 : cells - 1, true};
    return {cells - 1, 0, false};
  }
  return {f - 1, f, false};
}

// Arithmetic face concentrations; walls take the adjacent cell value.
Eigen::MatrixXd face_concentrations(const Eigen::MatrixXd& c, const Grid1D& grid)
{
  const auto faces = static_cast<Eigen::Index>(grid.n_faces());
  Eigen::MatrixXd out(c.rows(), faces);
  for (Eigen::Index f = 0; f < faces; ++f) {
    const FaceStencil s = stencil(grid, f);
    out.col(f) = 0.5 * (c.col(s.left) + c.col(s.right));
  }
  return out;
}

void check_shape(const MomentState& state, const MomentSystem& system)
{
  const auto species = system.masses.size();
  if (state.concentrations.rows() != species || state.velocities.rows() != species ||
      static_cast<std::size_t>(state.concentrations.cols()) != system.grid.n_cells ||
      static_cast<std::size_t>(state.velocities.cols()) != system.grid.n_faces()) {
    throw ValidationError("moment system: state shape does not match the system");
  }
}

} // namespace

MomentStepBounds stable_step_bounds(const MomentState& state, const MomentSystem& system)
{
  const double dx = system.grid.dx();
  MomentStepBounds b;
  // D_ij = 1 / Delta~_ij, Delta~_ij = m_i Delta_ij / kT
  double min_friction = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < system.delta.rows(); ++i) {
    for (Eigen::Index j = 0; j < system.delta.cols(); ++j) {
      if (i != j) min_friction = std::min(min_friction, system.masses(i) * system.delta(i, j) / system.kT);
    }
  }
  b.diffusive = 0.25 * dx * dx * min_friction;
  b.acoustic = 0.5 * state.epsilon * dx * std::sqrt(system.masses.minCoeff() / system.kT);
  const double u_max = state.velocities.cwiseAbs().maxCoeff();
  if (u_max > 0.0) b.advective = 0.5 * dx / u_max;
  return b;
}

MomentState imex_step(const MomentState& state, const MomentSystem& system, double dt)
{
  check_shape(state, system);
  if (!(dt > 0.0)) throw ValidationError("imex_step: dt must be > 0");
  const MomentStepBounds bounds = stable_step_bounds(state, system);
  if (dt > bounds.min() * (1.0 + 1e-12)) {
    throw NumericalError("imex_step: dt = " + std::to_string(dt) + " violates the explicit step bound " +
                         std::to_string(bounds.min()));
  }

  const Grid1D& grid = system.grid;
  const double dx = grid.dx();
  const double eps2 = state.epsilon * state.epsilon;
  const auto species = state.concentrations.rows();
  const auto cells = static_cast<Eigen::Index>(grid.n_cells);
  const auto faces = static_cast<Eigen::Index>(grid.n_faces());
  const Eigen::MatrixXd& c = state.concentrations;
  const Eigen::MatrixXd& u = state.velocities;
  const Eigen::MatrixXd c_face = face_concentrations(c, grid);

  // Local Lax-Friedrichs flux of c u^2 at cell centers, from the two faces
  // bounding each cell.
  Eigen::MatrixXd transport_flux(species, cells);
  for (Eigen::Index k = 0; k < cells; ++k) {
    for (Eigen::Index i = 0; i < species; ++i) {
      const double ul = u(i, k), ur = u(i, k + 1);
      const double ql = c_face(i, k) * ul, qr = c_face(i, k + 1) * ur;
      const double speed = 2.0 * std::max(std::abs(ul), std::abs(ur));
      transport_flux(i, k) = 0.5 * (ql * ul + qr * ur) - 0.5 * speed * (qr - ql);
    }
  }

  Eigen::MatrixXd u_next = Eigen::MatrixXd::Zero(species, faces);
  Eigen::MatrixXd a(species, species);
  Eigen::VectorXd rhs(species);
  for (Eigen::Index f = 0; f < faces; ++f) {
    const FaceStencil s = stencil(grid, f);
    if (s.wall) continue;
    if (grid.boundary == Boundary::periodic && f == faces - 1) {
      u_next.col(f) = u_next.col(0);
      continue;
    }
    const Eigen::VectorXd cf = c_face.col(f);
    const Eigen::VectorXd grad = (c.col(s.right) - c.col(s.left)) / dx;
    a.setZero();
    for (Eigen::Index i = 0; i < species; ++i) {
      a(i, i) = eps2 * cf(i) / dt;
      for (Eigen::Index j = 0; j < species; ++j) {
        if (j == i) continue;
        const double w = system.delta(i, j) * cf(i) * cf(j);
        a(i, i) += w;
        a(i, j) = -w;
      }
      const double transport = (transport_flux(i, s.right) - transport_flux(i, s.left)) / dx;
      rhs(i) = eps2 * (cf(i) * u(i, f) / dt - transport) - system.kT / system.masses(i) * grad(i);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    if (!(lu.rcond() > 1e-14)) {
      throw NumericalError("imex_step: singular momentum system at face " + std::to_string(f));
    }
    u_next.col(f) = lu.solve(rhs);
  }

  const Eigen::MatrixXd flux = c_face.cwiseProduct(u_next);
  Eigen::MatrixXd c_next = c - (dt / dx) * (flux.rightCols(cells) - flux.leftCols(cells));
  for (Eigen::Index k = 0; k < cells; ++k) {
    for (Eigen::Index i = 0; i < species; ++i) {
      if (c_next(i, k) >= 0.0) continue;
      if (c_next(i, k) < -kNegativeClampTolerance) {
        throw NumericalError("imex_step: negative concentration " + std::to_string(c_next(i, k)) + " for species " +
                             std::to_string(i) + " in cell " + std::to_string(k));
      }
      c_next(i, k) = 0.0;
    }
  }

  MomentState out;
  out.time = state.time + dt;
  out.epsilon = state.epsilon;
  out.concentrations = std::move(c_next);
  out.velocities = std::move(u_next);
  return out;
}

Eigen::MatrixXd momentum_balance_residual(const MomentState& state, const MomentSystem& system)
{
  check_shape(state, system);
  const Grid1D& grid = system.grid;
  const auto faces = static_cast<Eigen::Index>(grid.n_faces());
  const Eigen::MatrixXd c_face = face_concentrations(state.concentrations, grid);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(state.concentrations.rows(), faces);
  for (Eigen::Index f = 0; f < faces; ++f) {
    const FaceStencil s = stencil(grid, f);
    if (s.wall) continue;
    const Eigen::VectorXd grad = (state.concentrations.col(s.right) - state.concentrations.col(s.left)) / grid.dx();
    const Eigen::VectorXd theta = theta_eval(c_face.col(f), state.velocities.col(f), system.delta);
    out.col(f) = (system.kT * system.masses.cwiseInverse()).cwiseProduct(grad) - theta;
  }
  return out;
}

double momentum_exchange_imbalance(const MomentState& state, const MomentSystem& system)
{
  check_shape(state, system);
  const Eigen::MatrixXd c_face = face_concentrations(state.concentrations, system.grid);
  double worst = 0.0;
  for (Eigen::Index f = 0; f < c_face.cols(); ++f) {
    const Eigen::VectorXd theta = theta_eval(c_face.col(f), state.velocities.col(f), system.delta);
    worst = std::max(worst, std::abs(system.masses.dot(theta)));
  }
  return worst;
}

Eigen::MatrixXd moment_fluxes(const MomentState& state, const MomentSystem& system)
{
  check_shape(state, system);
  return face_concentrations(state.concentrations, system.grid).cwiseProduct(state.velocities);
}

std::vector<MomentState> run_kinetic(const MomentState& initial, const MomentSystem& system, double t_end, double dt,
                                     std::size_t output_every, KineticRunStats* stats)
{
  if (!(t_end >= 0.0) || !(dt > 0.0)) throw ValidationError("run_kinetic: t_end must be >= 0 and dt > 0");
  std::vector<MomentState> trajectory{initial};
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
  KineticRunStats local;
  if (steps > 0) {
    const double h = t_end / static_cast<double>(steps);
    MomentState state = initial;
    for (std::size_t s = 1; s <= steps; ++s) {
      state = imex_step(state, system, h);
      state.time = initial.time + h * static_cast<double>(s);
      local.max_momentum_exchange_imbalance =
        std::max(local.max_momentum_exchange_imbalance, momentum_exchange_imbalance(state, system));
      if (s == steps || (output_every > 0 && s % output_every == 0)) trajectory.push_back(state);
    }
  }
  local.steps = steps;
  if (stats) *stats = local;
  return trajectory;
}

double concentration_error(const Eigen::Ref<const Eigen::MatrixXd>& a, const Eigen::Ref<const Eigen::MatrixXd>& b,
                           const Grid1D& grid)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("concentration_error: shape mismatch");
  return l2_norm(a - b, grid);
}

SweepResult epsilon_sweep(const SweepSetup& setup, const std::vector<double>& eps_list)
{
  if (eps_list.empty()) throw ValidationError("epsilon_sweep: empty eps list");
  const MixtureSpec spec = validate_mixture(setup.spec);
  const Grid1D grid = validate_grid(setup.grid);
  if (setup.initial.size() != spec.size()) throw ValidationError("epsilon_sweep: one initial profile per species required");
  if (!(setup.t_end > 0.0)) throw ValidationError("epsilon_sweep: t_end must be > 0");

  const Eigen::MatrixXd c0 = sample_profiles(setup.initial, grid);
  const MaxwellStefanSystem ms{grid, diffusion_matrix(setup.delta, spec.total_concentration), spec.total_concentration};
  const MomentSystem kinetic = make_moment_system(grid, spec, setup.delta);

  double dt = max_stable_dt(ms);
  for (double eps : eps_list) {
    dt = std::min(dt, stable_step_bounds(make_moment_state(c0, grid, eps), kinetic).min());
  }
  if (setup.dt) {
    if (*setup.dt > dt * (1.0 + 1e-12)) {
      throw NumericalError("epsilon_sweep: dt = " + std::to_string(*setup.dt) + " exceeds the stability bound " +
                           std::to_string(dt));
    }
    dt = *setup.dt;
  }
  const auto steps = static_cast<std::size_t>(std::ceil(setup.t_end / dt * (1.0 - 1e-12)));
  const double h = setup.t_end / static_cast<double>(steps);

  const MixtureState reference = run_to(make_state(c0, ms), ms, setup.t_end, h);

  SweepResult result;
  result.dt = h;
  result.steps = steps;
  for (double eps : eps_list) {
    KineticRunStats stats;
    const auto trajectory = run_kinetic(make_moment_state(c0, grid, eps), kinetic, setup.t_end, h, 0, &stats);
    SweepRow row;
    row.epsilon = eps;
    row.error = concentration_error(trajectory.back().concentrations, reference.concentrations, grid);
    row.max_momentum_exchange_imbalance = stats.max_momentum_exchange_imbalance;
    if (!result.rows.empty()) {
      const SweepRow& prev = result.rows.back();
      row.observed_order = std::log(prev.error / row.error) / std::log(prev.epsilon / eps);
    }
    result.rows.push_back(row);
  }
  return result;
}

} // namespace msdiff
