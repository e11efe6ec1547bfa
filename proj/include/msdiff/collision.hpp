#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msdiff/errors.hpp"

namespace msdiff {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Elastic binary collision: velocities after a collision of a particle of
/// mass `m_i` at `v` with one of mass `m_j` at `v_star`, the scattering
/// direction given by the unit vector `sigma`.
///
/// Both the momentum and kinetic energy of the pair are conserved.
template <typename Scalar>
std::pair<Vector3<Scalar>, Vector3<Scalar>> post_collision_velocities(const Vector3<Scalar>& v,
                                                                      const Vector3<Scalar>& v_star,
                                                                      Scalar m_i, Scalar m_j,
                                                                      const Vector3<Scalar>& sigma)
{
  using std::abs;
  if (!(m_i > Scalar(0)) || !(m_j > Scalar(0))) {
    throw ValidationError("post_collision_velocities: masses must be positive");
  }
  if (abs(sigma.norm() - Scalar(1)) > Scalar(1e-12)) {
    throw ValidationError("post_collision_velocities: sigma must be a unit vector");
  }
  const Scalar total = m_i + m_j;
  const Vector3<Scalar> momentum = m_i * v + m_j * v_star;
  const Scalar relative_speed = (v - v_star).norm();
  Vector3<Scalar> v_prime = (momentum + m_j * relative_speed * sigma) / total;
  Vector3<Scalar> v_star_prime = (momentum - m_i * relative_speed * sigma) / total;
  return {std::move(v_prime), std::move(v_star_prime)};
}

// Kinetic part of the cross section, an even polynomial in the relative
// speed: Phi(r) = sum_n coefficients[n] * r^(2n).
struct AnalyticKineticKernel {
  std::vector<double> coefficients{1.0};

  std::size_t truncation_order() const noexcept
  {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }
};

// Throws ValidationError when the kernel is empty or Phi goes negative
// somewhere on a uniform validation grid over [0, r_max].
AnalyticKineticKernel validate_kernel(AnalyticKineticKernel kernel, double r_max = 10.0,
                                      std::size_t grid_points = 1001);

/// Horner evaluation in r^2.
template <typename Scalar>
Scalar eval_phi(const AnalyticKineticKernel& kernel, Scalar r)
{
  if (r < Scalar(0)) {
    throw ValidationError("eval_phi: r must be nonnegative");
  }
  const Scalar r2 = r * r;
  Scalar acc(0);
  for (auto it = kernel.coefficients.rbegin(); it != kernel.coefficients.rend(); ++it) {
    acc = acc * r2 + Scalar(*it);
  }
  return acc;
}

// Least-squares approximation of the hard-sphere kernel Phi(r) = r by an even
// polynomial of the given order on [0, r_max].
struct HardSphereFit {
  AnalyticKineticKernel kernel;
  double r_max = 0.0;
  double max_abs_error = 0.0; // over the fitting grid
};

HardSphereFit fit_hard_sphere(double r_max, std::size_t order, std::size_t samples = 2001);

/// Angular kernel b(eta), eta = cos(theta), either a constant or a table on a
/// uniform grid over [-1, 1] with an odd number of nodes.
class AngularKernel {
public:
  static AngularKernel constant(double value);
  static AngularKernel tabulated(std::vector<double> samples);
  // Tabulates `fn` on `nodes` uniformly spaced points.
  template <typename Fn>
  static AngularKernel sampled(Fn&& fn, std::size_t nodes)
  {
    std::vector<double> samples(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      samples[k] = fn(node(k, nodes));
    }
    return tabulated(std::move(samples));
  }

  bool is_constant() const noexcept { return samples_.empty(); }
  const std::vector<double>& samples() const noexcept { return samples_; }
  double constant_value() const noexcept { return constant_; }

  // Linear interpolation of the table; exact for constants.
  double operator()(double eta) const;

  // Mirror image b(-eta).
  AngularKernel reflected() const;

  static double node(std::size_t k, std::size_t count)
  {
    return -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(count - 1);
  }

private:
  AngularKernel() = default;

  double constant_ = 0.0;
  std::vector<double> samples_;
};

double angular_l1_norm(const AngularKernel& b);

// 2*pi * int_{-1}^{1} eta b(eta) d eta. Zero for even kernels; this is the
// polar part of the sphere integral of b(k.sigma) sigma.
double angular_first_moment(const AngularKernel& b);

/// One angular kernel per unordered species pair.
class AngularKernelSet {
public:
  explicit AngularKernelSet(std::size_t species_count);

  std::size_t species_count() const noexcept { return species_count_; }

  void set(std::size_t i, std::size_t j, AngularKernel kernel);
  // Pairs configured with an L1 norm only carry no table.
  void set_l1_norm(std::size_t i, std::size_t j, double l1_norm);

  bool has(std::size_t i, std::size_t j) const;
  const AngularKernel& kernel(std::size_t i, std::size_t j) const;
  double l1_norm(std::size_t i, std::size_t j) const;

private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  struct Entry {
    std::optional<AngularKernel> kernel;
    std::optional<double> l1_norm;
  };

  std::size_t species_count_;
  std::vector<Entry> entries_;
};

// B(v, v_star, sigma) = Phi(|v - v_star|) b(cos theta).
double cross_section_eval(const AnalyticKineticKernel& kernel, const AngularKernel& b,
                          const Vector3<double>& v, const Vector3<double>& v_star,
                          const Vector3<double>& sigma);

} // namespace msdiff
