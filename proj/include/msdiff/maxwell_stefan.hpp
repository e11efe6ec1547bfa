#pragma once

#include <vector>

#include <Eigen/Dense>

#include "msdiff/coefficients.hpp"
#include "msdiff/grid.hpp"

namespace msdiff {

struct MaxwellStefanSystem {
  Grid1D grid;
  DiffusionMatrix diffusion;
  double total_concentration = 1.0;
};

// Concentrations at cell centers and the fluxes they induce at faces.
struct MixtureState {
  double time = 0.0;
  Eigen::MatrixXd concentrations; // I x n_cells
  Eigen::MatrixXd fluxes;         // I x n_faces
};

inline constexpr double kClosureTolerance = 1e-10;
inline constexpr double kNegativeClampTolerance = 1e-12;

/// Fluxes at one face. Solves the Maxwell-Stefan relations
///   -grad c_i = (1/c) sum_{j != i} (c_j F_i - c_i F_j) / D_ij,  i < I,
/// with the last relation replaced by sum_i F_i = 0.
Eigen::VectorXd solve_fluxes(const Eigen::Ref<const Eigen::VectorXd>& c_at_face,
                             const Eigen::Ref<const Eigen::VectorXd>& grad_c,
                             const DiffusionMatrix& d, double c_total);

// Face fluxes for a full concentration field; centered gradients, arithmetic
// face averages, zero flux at no-flux walls.
Eigen::MatrixXd face_fluxes(const Eigen::Ref<const Eigen::MatrixXd>& concentrations,
                            const MaxwellStefanSystem& system);

// Validates the concentrations (nonnegative, summing to c in each cell) and
// attaches consistent fluxes.
MixtureState make_state(Eigen::MatrixXd concentrations, const MaxwellStefanSystem& system, double time = 0.0);

// Explicit Euler bound 0.25 dx^2 / max D_ij.
double max_stable_dt(const MaxwellStefanSystem& system);

// Applies the clamp for roundoff-level negatives in place; throws for
// anything below -kNegativeClampTolerance.
void clamp_roundoff_negatives(Eigen::MatrixXd& concentrations, double c_total);

// One explicit finite-volume step. `state.fluxes` must match
// `state.concentrations` (as produced by make_state or step).
MixtureState step(const MixtureState& state, const MaxwellStefanSystem& system, double dt);

// Steps to t_end with a step size no larger than dt that lands on t_end
// exactly; snapshots every `output_every` steps plus the initial and final
// states.
std::vector<MixtureState> run(const MixtureState& initial, const MaxwellStefanSystem& system, double t_end,
                              double dt, std::size_t output_every);

// Final state only.
MixtureState run_to(const MixtureState& initial, const MaxwellStefanSystem& system, double t_end, double dt);

} // namespace msdiff
