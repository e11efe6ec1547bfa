#include "msdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "msdiff/errors.hpp"

namespace msdiff {

QuadratureConfig validate_quadrature(QuadratureConfig q)
{
  if (q.nodes_per_axis < 8 || q.nodes_per_axis > 128) {
    throw ValidationError("quadrature: nodes_per_axis must lie in [8, 128]");
  }
  if (q.theta_nodes_per_axis != 0 && (q.theta_nodes_per_axis < 2 || q.theta_nodes_per_axis > 20)) {
    throw ValidationError("quadrature: theta_nodes_per_axis must be 0 (automatic) or lie in [2, 20]");
  }
  if (!(q.richardson_eps_coarse > 0.0) || !(q.richardson_eps_fine > 0.0) ||
      q.richardson_eps_coarse > 0.1 || q.richardson_eps_fine > 0.1 ||
      q.richardson_eps_coarse == q.richardson_eps_fine) {
    throw ValidationError("quadrature: richardson_eps must be two distinct values in (0, 0.1]");
  }
  return q;
}

GaussHermiteRule gauss_hermite(int n)
{
  if (n < 1 || n > 256) throw ValidationError("gauss_hermite: node count must lie in [1, 256]");

  // Golub-Welsch for the starting nodes, then Newton on the orthonormal
  // Hermite recurrence, which also yields accurate weights.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  Eigen::VectorXd x = solver.eigenvalues();

  const double pi_m4 = std::pow(M_PI, -0.25);
  GaussHermiteRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int k = 0; k < n; ++k) {
    double z = x(k);
    double derivative = 0.0;
    for (int iter = 0; iter < 20; ++iter) {
      double p_prev = 0.0;
      double p = pi_m4;
      for (int m = 0; m < n; ++m) {
        const double p_next = z * std::sqrt(2.0 / (m + 1)) * p - std::sqrt(static_cast<double>(m) / (m + 1)) * p_prev;
        p_prev = p;
        p = p_next;
      }
      derivative = std::sqrt(2.0 * n) * p_prev;
      const double dz = p / derivative;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes(k) = z;
    rule.weights(k) = 2.0 / (derivative * derivative);
  }

  // Impose the exact symmetry of the rule.
  for (int k = 0; k < n / 2; ++k) {
    const int mirror = n - 1 - k;
    const double node = 0.5 * (rule.nodes(mirror) - rule.nodes(k));
    const double weight = 0.5 * (rule.weights(mirror) + rule.weights(k));
    rule.nodes(k) = -node;
    rule.nodes(mirror) = node;
    rule.weights(k) = rule.weights(mirror) = weight;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

double gh_moment_3d(double mass, double kT, const ExponentTriple& e, const QuadratureConfig& q)
{
  if (!(mass > 0.0) || !(kT > 0.0)) throw ValidationError("gh_moment_3d: mass and kT must be > 0");
  const int n = q.nodes_per_axis;
  if (static_cast<int>(e.degree()) > 2 * n - 2) {
    throw NumericalError("gh_moment_3d: total degree " + std::to_string(e.degree()) + " exceeds 2 * " +
                         std::to_string(n) + " - 2");
  }
  const GaussHermiteRule rule = gauss_hermite(n);
  const Eigen::VectorXd v = std::sqrt(2.0 * kT / mass) * rule.nodes;

  const auto power = [](double base, unsigned exponent) {
    double r = 1.0;
    for (unsigned k = 0; k < exponent; ++k) r *= base;
    return r;
  };

  double sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const double fa = rule.weights(a) * power(v(a), e.alpha);
    for (int b = 0; b < n; ++b) {
      const double fab = fa * rule.weights(b) * power(v(b), e.beta);
      for (int c = 0; c < n; ++c) {
        sum += fab * rule.weights(c) * power(v(c), e.gamma);
      }
    }
  }
  return sum / std::pow(M_PI, 1.5);
}

double maxwellian_density(double c, const Vector3<double>& u, double mass, double kT, const Vector3<double>& v)
{
  if (!(c >= 0.0)) throw ValidationError("maxwellian_density: c must be >= 0");
  if (!(mass > 0.0) || !(kT > 0.0)) throw ValidationError("maxwellian_density: mass and kT must be > 0");
  return c * std::pow(mass / (2.0 * M_PI * kT), 1.5) * std::exp(-mass * (v - u).squaredNorm() / (2.0 * kT));
}

namespace {

struct TensorNodes3 {
  std::vector<Vector3<double>> points;
  std::vector<double> weights;
};

// Nodes of the normalized Gaussian with mean `mean` and variance kT/m per
// axis; weights sum to 1.
TensorNodes3 maxwellian_nodes(const GaussHermiteRule& rule, const Vector3<double>& mean, double mass, double kT)
{
  const auto n = rule.nodes.size();
  const double scale = std::sqrt(2.0 * kT / mass);
  const double norm = std::pow(M_PI, -1.5);
  TensorNodes3 out;
  out.points.reserve(static_cast<std::size_t>(n * n * n));
  out.weights.reserve(static_cast<std::size_t>(n * n * n));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index c = 0; c < n; ++c) {
        out.points.emplace_back(mean + scale * Vector3<double>(rule.nodes(a), rule.nodes(b), rule.nodes(c)));
        out.weights.push_back(norm * rule.weights(a) * rule.weights(b) * rule.weights(c));
      }
    }
  }
  return out;
}

int theta_nodes(const AnalyticKineticKernel& kernel, const QuadratureConfig& q)
{
  const auto order = static_cast<int>(kernel.truncation_order());
  const int nodes = q.theta_nodes_per_axis > 0 ? q.theta_nodes_per_axis : std::max(4, order + 2);
  // Per axis the integrand is a polynomial of degree 2N + 1.
  if (2 * nodes - 1 < 2 * order + 1) {
    throw NumericalError("theta_oracle: " + std::to_string(nodes) + " nodes per axis cannot integrate a kernel of order " +
                         std::to_string(order) + " exactly");
  }
  if (nodes > 20) {
    throw NumericalError("theta_oracle: kernel order " + std::to_string(order) + " needs more than 20 nodes per axis");
  }
  return nodes;
}

} // namespace

Vector3<double> theta_oracle(const MixtureSpec& spec, const AnalyticKineticKernel& kernel, double b_norm,
                             const ThetaProblem& p, double eps, const QuadratureConfig& q)
{
  if (p.i == p.j || p.i >= spec.size() || p.j >= spec.size()) {
    throw ValidationError("theta_oracle: species indices must be distinct and in range");
  }
  if (!(eps > 0.0) || eps > 0.1) throw ValidationError("theta_oracle: eps must lie in (0, 0.1]");
  if (!(p.c_i > 0.0) || !(p.c_j > 0.0)) throw ValidationError("theta_oracle: concentrations must be > 0");

  const double m_i = spec.mass(p.i);
  const double m_j = spec.mass(p.j);
  const double kT = spec.kT();
  const GaussHermiteRule rule = gauss_hermite(theta_nodes(kernel, q));
  const TensorNodes3 vi = maxwellian_nodes(rule, eps * p.u_i, m_i, kT);
  const TensorNodes3 vj = maxwellian_nodes(rule, eps * p.u_j, m_j, kT);

  const auto& a = kernel.coefficients;
  Vector3<double> sum = Vector3<double>::Zero();
  for (std::size_t s = 0; s < vi.points.size(); ++s) {
    Vector3<double> inner = Vector3<double>::Zero();
    for (std::size_t t = 0; t < vj.points.size(); ++t) {
      const Vector3<double> d = vj.points[t] - vi.points[s];
      const double r2 = d.squaredNorm();
      double phi = 0.0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) phi = phi * r2 + *it;
      inner += (vj.weights[t] * phi) * d;
    }
    sum += vi.weights[s] * inner;
  }
  const double prefactor = 2.0 * M_PI * m_j * b_norm / (m_i + m_j);
  return (prefactor * p.c_i * p.c_j / eps) * sum;
}

double delta_tilde_from_theta(const MixtureSpec& spec, const AnalyticKineticKernel& kernel, double b_norm,
                              const ThetaProblem& p, const QuadratureConfig& q)
{
  const Vector3<double> du = p.u_j - p.u_i;
  Eigen::Index component = 0;
  if (du.cwiseAbs().maxCoeff(&component) == 0.0) {
    throw ValidationError("delta_tilde_from_theta: velocity difference must be nonzero");
  }
  const double m_i = spec.mass(p.i);
  const double kT = spec.kT();
  const auto at = [&](double eps) {
    const Vector3<double> theta = theta_oracle(spec, kernel, b_norm, p, eps, q);
    return m_i * theta(component) / (kT * p.c_i * p.c_j * du(component));
  };
  const double e1 = q.richardson_eps_coarse;
  const double e2 = q.richardson_eps_fine;
  const double d1 = at(e1);
  const double d2 = at(e2);
  return (e1 * d2 - e2 * d1) / (e1 - e2);
}

} // namespace msdiff
