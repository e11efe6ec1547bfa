#pragma once

#include <Eigen/Dense>

#include "msdiff/collision.hpp"
#include "msdiff/gaussian_moments.hpp"
#include "msdiff/mixture.hpp"

namespace msdiff {

struct QuadratureConfig {
  int nodes_per_axis = 40;
  // Nodes per axis for the 6-D momentum-exchange integral. 0 picks the
  // smallest exact rule for the kernel (truncation order + 2, at least 4).
  int theta_nodes_per_axis = 0;
  double richardson_eps_coarse = 1e-3;
  double richardson_eps_fine = 5e-4;
};

QuadratureConfig validate_quadrature(QuadratureConfig q);

// Gauss-Hermite rule for the weight exp(-x^2).
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussHermiteRule gauss_hermite(int n);

// Tensor-product Gauss-Hermite evaluation of the normalized Maxwellian
// moment. Exact up to roundoff for total degree <= 2 n - 2 per axis.
double gh_moment_3d(double mass, double kT, const ExponentTriple& e, const QuadratureConfig& q = {});

// c (m / 2 pi kT)^{3/2} exp(-m |v - u|^2 / 2kT)
double maxwellian_density(double c, const Vector3<double>& u, double mass, double kT,
                          const Vector3<double>& v);

// Inputs shared by the momentum-exchange oracle routines.
struct ThetaProblem {
  std::size_t i = 0, j = 1;
  Vector3<double> u_i = Vector3<double>::Zero();
  Vector3<double> u_j = Vector3<double>::UnitX();
  double c_i = 1.0, c_j = 1.0;
};

/// Contribution of species j to the momentum exchange Theta_i at scale eps,
/// by direct 6-D quadrature of
///   (1/eps) 2 pi m_j |b|/(m_i + m_j) int Phi(|v - v*|) f_i(v) f_j(v*) (v* - v) dv* dv
/// with f_i, f_j Maxwellians shifted by eps u_i, eps u_j.
Vector3<double> theta_oracle(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                             double b_norm, const ThetaProblem& p, double eps,
                             const QuadratureConfig& q = {});

/// Friction coefficient m_i Theta_(l) / (kT c_i c_j (u_j - u_i)_(l)),
/// Richardson-extrapolated to eps -> 0 over the two configured eps values.
/// `l` is the component with the largest velocity difference.
double delta_tilde_from_theta(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                              double b_norm, const ThetaProblem& p, const QuadratureConfig& q = {});

} // namespace msdiff
