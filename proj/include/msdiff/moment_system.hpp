#pragma once

#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "msdiff/coefficients.hpp"
#include "msdiff/grid.hpp"
#include "msdiff/maxwell_stefan.hpp"

namespace msdiff {

// Scaled mass/momentum balances with Maxwellian closure, 1-D. Concentrations
// live at cell centers and velocities at faces, so the momentum balance sits
// on the same stencil as the Maxwell-Stefan flux relations.
struct MomentState {
  double time = 0.0;
  double epsilon = 0.1;
  Eigen::MatrixXd concentrations; // I x n_cells
  Eigen::MatrixXd velocities;     // I x n_faces
};

struct MomentSystem {
  Grid1D grid;
  Eigen::VectorXd masses;
  double kT = 1.0;
  Eigen::MatrixXd delta; // Delta_ij = kT Delta~_ij / m_i, zero diagonal
};

MomentSystem make_moment_system(const Grid1D& grid, const MixtureSpec& spec, const DeltaMatrix& delta_tilde);

// Well-prepared data: zero velocities.
MomentState make_moment_state(Eigen::MatrixXd concentrations, const Grid1D& grid, double epsilon, double time = 0.0);

/// Theta_i = sum_{j != i} Delta_ij c_i c_j (u_j - u_i)
Eigen::VectorXd theta_eval(const Eigen::Ref<const Eigen::VectorXd>& c, const Eigen::Ref<const Eigen::VectorXd>& u,
                           const Eigen::Ref<const Eigen::MatrixXd>& delta);

struct MomentStepBounds {
  double diffusive = std::numeric_limits<double>::infinity();
  double acoustic = std::numeric_limits<double>::infinity();
  double advective = std::numeric_limits<double>::infinity();

  double min() const noexcept { return std::min(diffusive, std::min(acoustic, advective)); }
};

// Limits for the explicit parts: mass update (0.25 dx^2 / max D_ij with
// D_ij = 1/Delta~_ij), the pressure wave (0.5 eps dx sqrt(m_min / kT)) and
// the transport term (0.5 dx / max |u|).
MomentStepBounds stable_step_bounds(const MomentState& state, const MomentSystem& system);

/// One IMEX step. The momentum balance at every face is solved first, with
/// friction, pressure gradient and inertia implicit in u (an I x I system per
/// face) and the transport term explicit; the mass balance then advances with
/// the new velocities.
MomentState imex_step(const MomentState& state, const MomentSystem& system, double dt);

// (kT/m_i) d_x c_i - Theta_i at every face (I x n_faces, zero on walls).
Eigen::MatrixXd momentum_balance_residual(const MomentState& state, const MomentSystem& system);

// max over faces of |sum_i m_i Theta_i|.
double momentum_exchange_imbalance(const MomentState& state, const MomentSystem& system);

// Face fluxes c_i u_i with arithmetic face concentrations.
Eigen::MatrixXd moment_fluxes(const MomentState& state, const MomentSystem& system);

struct KineticRunStats {
  double max_momentum_exchange_imbalance = 0.0;
  std::size_t steps = 0;
};

std::vector<MomentState> run_kinetic(const MomentState& initial, const MomentSystem& system, double t_end,
                                     double dt, std::size_t output_every, KineticRunStats* stats = nullptr);

struct SweepSetup {
  MixtureSpec spec;
  Grid1D grid;
  std::vector<SpeciesProfile> initial;
  DeltaMatrix delta;
  double t_end = 0.05;
  // Shared step for every run; defaults to the tightest bound over all eps.
  std::optional<double> dt;
};

struct SweepRow {
  double epsilon = 0.0;
  double error = 0.0;
  double observed_order = std::numeric_limits<double>::quiet_NaN(); // vs the previous row
  double max_momentum_exchange_imbalance = 0.0;
};

struct SweepResult {
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<SweepRow> rows;
};

// Moment-system runs for each eps compared against one Maxwell-Stefan
// reference run on the same grid and time step.
SweepResult epsilon_sweep(const SweepSetup& setup, const std::vector<double>& eps_list);

// L2 distance between two concentration fields on the grid.
double concentration_error(const Eigen::Ref<const Eigen::MatrixXd>& a, const Eigen::Ref<const Eigen::MatrixXd>& b,
                           const Grid1D& grid);

} // namespace msdiff
