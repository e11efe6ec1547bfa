#include "msdiff/collision.hpp"

#include <algorithm>
#include <string>

namespace msdiff {

AnalyticKineticKernel validate_kernel(AnalyticKineticKernel kernel, double r_max, std::size_t grid_points)
{
  if (kernel.coefficients.empty()) throw ValidationError("kernel: at least one coefficient required");
  if (!(r_max > 0.0) || grid_points < 2) throw ValidationError("kernel: invalid validation grid");
  for (double a : kernel.coefficients) {
    if (!std::isfinite(a)) throw ValidationError("kernel: coefficients must be finite");
  }
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double r = r_max * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const double phi = eval_phi(kernel, r);
    if (phi < 0.0) {
      throw ValidationError("kernel: Phi(" + std::to_string(r) + ") = " + std::to_string(phi) + " is negative");
    }
  }
  return kernel;
}

HardSphereFit fit_hard_sphere(double r_max, std::size_t order, std::size_t samples)
{
  if (!(r_max > 0.0)) throw ValidationError("hard-sphere fit: r_max must be > 0");
  if (samples < order + 2) throw ValidationError("hard-sphere fit: too few samples for the requested order");

  // Fit in t = r / r_max to keep the Vandermonde columns O(1).
  const auto rows = static_cast<Eigen::Index>(samples);
  const auto cols = static_cast<Eigen::Index>(order + 1);
  Eigen::MatrixXd basis(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(rows - 1);
    const double t2 = t * t;
    double p = 1.0;
    for (Eigen::Index n = 0; n < cols; ++n) {
      basis(k, n) = p;
      p *= t2;
    }
    target(k) = t;
  }
  const Eigen::VectorXd scaled = basis.colPivHouseholderQr().solve(target);

  HardSphereFit fit;
  fit.r_max = r_max;
  fit.kernel.coefficients.resize(order + 1);
  const double r2 = r_max * r_max;
  double scale = r_max; // t = r / r_max and Phi = r_max * t
  for (std::size_t n = 0; n <= order; ++n) {
    fit.kernel.coefficients[n] = scaled(static_cast<Eigen::Index>(n)) * scale;
    scale /= r2;
  }
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double r = r_max * static_cast<double>(k) / static_cast<double>(rows - 1);
    fit.max_abs_error = std::max(fit.max_abs_error, std::abs(eval_phi(fit.kernel, r) - r));
  }
  return fit;
}

AngularKernel AngularKernel::constant(double value)
{
  if (!(value >= 0.0) || !std::isfinite(value)) throw ValidationError("angular kernel: constant must be >= 0");
  AngularKernel b;
  b.constant_ = value;
  return b;
}

AngularKernel AngularKernel::tabulated(std::vector<double> samples)
{
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) throw ValidationError("angular kernel: table needs an odd number (>= 3) of nodes");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(samples[k] >= 0.0) || !std::isfinite(samples[k])) {
      throw ValidationError("angular kernel: sample " + std::to_string(k) + " must be finite and >= 0");
    }
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    if (std::abs(samples[k] - samples[n - 1 - k]) > 1e-12) {
      throw ValidationError("angular kernel: table is not even (b(eta) != b(-eta) at node " + std::to_string(k) + ")");
    }
  }
  AngularKernel b;
  b.samples_ = std::move(samples);
  return b;
}

double AngularKernel::operator()(double eta) const
{
  if (is_constant()) return constant_;
  if (eta < -1.0 || eta > 1.0) throw ValidationError("angular kernel: eta outside [-1, 1]");
  const std::size_t n = samples_.size();
  const double s = (eta + 1.0) * 0.5 * static_cast<double>(n - 1);
  const std::size_t k = std::min(static_cast<std::size_t>(s), n - 2);
  const double w = s - static_cast<double>(k);
  return (1.0 - w) * samples_[k] + w * samples_[k + 1];
}

AngularKernel AngularKernel::reflected() const
{
  if (is_constant()) return *this;
  AngularKernel b;
  b.samples_.assign(samples_.rbegin(), samples_.rend());
  return b;
}

namespace {

double simpson_weight(std::size_t k, std::size_t n)
{
  if (k == 0 || k + 1 == n) return 1.0;
  return k % 2 == 1 ? 4.0 : 2.0;
}

} // namespace

double angular_l1_norm(const AngularKernel& b)
{
  if (b.is_constant()) return 2.0 * std::abs(b.constant_value());
  // Composite Simpson, accumulated over mirrored node pairs so the result
  // does not depend on the orientation of the table.
  const auto& s = b.samples();
  const std::size_t n = s.size();
  const double h = 2.0 / static_cast<double>(n - 1);
  double sum = simpson_weight(n / 2, n) * std::abs(s[n / 2]);
  for (std::size_t k = 0; k < n / 2; ++k) {
    sum += simpson_weight(k, n) * (std::abs(s[k]) + std::abs(s[n - 1 - k]));
  }
  return sum * h / 3.0;
}

double angular_first_moment(const AngularKernel& b)
{
  if (b.is_constant()) return 0.0;
  // Pair symmetric nodes so that an even table cancels exactly.
  const auto& s = b.samples();
  const std::size_t n = s.size();
  const double h = 2.0 / static_cast<double>(n - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double weight = simpson_weight(k, n);
    const double eta = AngularKernel::node(k, n);
    sum += weight * (eta * s[k] - eta * s[n - 1 - k]);
  }
  return 2.0 * M_PI * sum * h / 3.0;
}

AngularKernelSet::AngularKernelSet(std::size_t species_count)
  : species_count_(species_count), entries_(species_count * (species_count > 0 ? species_count - 1 : 0) / 2)
{
}

std::size_t AngularKernelSet::slot(std::size_t i, std::size_t j) const
{
  if (i == j || i >= species_count_ || j >= species_count_) {
    throw ValidationError("angular kernel set: invalid species pair (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
  }
  if (i > j) std::swap(i, j);
  return i * species_count_ - i * (i + 1) / 2 + (j - i - 1);
}

void AngularKernelSet::set(std::size_t i, std::size_t j, AngularKernel kernel)
{
  auto& e = entries_[slot(i, j)];
  e.l1_norm = angular_l1_norm(kernel);
  e.kernel = std::move(kernel);
}

void AngularKernelSet::set_l1_norm(std::size_t i, std::size_t j, double l1_norm)
{
  if (!(l1_norm >= 0.0) || !std::isfinite(l1_norm)) throw ValidationError("angular kernel set: L1 norm must be >= 0");
  auto& e = entries_[slot(i, j)];
  e.kernel.reset();
  e.l1_norm = l1_norm;
}

bool AngularKernelSet::has(std::size_t i, std::size_t j) const { return entries_[slot(i, j)].l1_norm.has_value(); }

const AngularKernel& AngularKernelSet::kernel(std::size_t i, std::size_t j) const
{
  const auto& e = entries_[slot(i, j)];
  if (!e.kernel) {
    throw ValidationError("angular kernel set: pair (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") has no tabulated kernel");
  }
  return *e.kernel;
}

double AngularKernelSet::l1_norm(std::size_t i, std::size_t j) const
{
  const auto& e = entries_[slot(i, j)];
  if (!e.l1_norm) {
    throw ValidationError("angular kernel set: pair (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is not configured");
  }
  return *e.l1_norm;
}

double cross_section_eval(const AnalyticKineticKernel& kernel, const AngularKernel& b, const Vector3<double>& v,
                          const Vector3<double>& v_star, const Vector3<double>& sigma)
{
  if (std::abs(sigma.norm() - 1.0) > 1e-12) throw ValidationError("cross_section_eval: sigma must be a unit vector");
  const Vector3<double> g = v - v_star;
  const double speed = g.norm();
  if (speed == 0.0) throw ValidationError("cross_section_eval: coincident velocities");
  const double cos_theta = std::clamp(g.dot(sigma) / speed, -1.0, 1.0);
  return eval_phi(kernel, speed) * b(cos_theta);
}

} // namespace msdiff
