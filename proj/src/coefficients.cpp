#include "msdiff/coefficients.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "msdiff/gaussian_moments.hpp"

namespace msdiff {

std::vector<Composition3> compositions3(unsigned n, unsigned max_n)
{
  if (n > max_n) {
    throw ValidationError("compositions3: n = " + std::to_string(n) + " exceeds the maximum " + std::to_string(max_n));
  }
  std::vector<Composition3> out;
  out.reserve((n + 1) * (n + 2) / 2);
  for (unsigned n1 = 0; n1 <= n; ++n1) {
    for (unsigned n2 = 0; n2 <= n - n1; ++n2) {
      out.push_back({n1, n2, n - n1 - n2});
    }
  }
  return out;
}

std::vector<std::pair<unsigned, unsigned>> even_splits(unsigned total)
{
  if (total % 2 != 0) throw ValidationError("even_splits: input " + std::to_string(total) + " is odd");
  std::vector<std::pair<unsigned, unsigned>> out;
  out.reserve(total / 2 + 1);
  for (unsigned alpha = 0; alpha <= total; alpha += 2) out.emplace_back(alpha, total - alpha);
  return out;
}

namespace {

constexpr unsigned kMaxFactorialArg = 2 * kMaxSeriesOrder;

const std::array<long double, kMaxFactorialArg + 1>& log_factorials()
{
  static const auto table = [] {
    std::array<long double, kMaxFactorialArg + 1> t{};
    t[0] = 0.0L;
    for (unsigned k = 1; k <= kMaxFactorialArg; ++k) t[k] = t[k - 1] + std::log(static_cast<long double>(k));
    return t;
  }();
  return table;
}

long double log_odd_double_factorial(unsigned x)
{
  // (x - 1)!! = x! / (2^{x/2} (x/2)!) for even x
  const auto& lf = log_factorials();
  return lf[x] - static_cast<long double>(x / 2) * std::log(2.0L) - lf[x / 2];
}

bool mul(std::uint64_t& acc, std::uint64_t factor) { return !__builtin_mul_overflow(acc, factor, &acc); }

// n choose k without overflow for the ranges used here (n <= 60).
bool binomial(unsigned n, unsigned k, std::uint64_t& out)
{
  if (k > n - k) k = n - k;
  out = 1;
  for (unsigned t = 1; t <= k; ++t) {
    // out * (n - k + t) is divisible by t at each step.
    std::uint64_t next = out;
    if (!mul(next, n - k + t)) return false;
    out = next / t;
  }
  return true;
}

struct Coefficient {
  bool exact = true;
  std::uint64_t value = 0;
  long double log_value = 0.0L;
};

// Multinomial x binomials x double-factorial product for one term.
Coefficient term_coefficient(unsigned n, const Composition3& comp, const std::array<unsigned, 6>& e)
{
  Coefficient c;
  std::uint64_t acc = 1;
  bool ok = true;
  std::uint64_t b = 0;
  ok = ok && binomial(n, comp.n1, b) && mul(acc, b);
  ok = ok && binomial(n - comp.n1, comp.n2, b) && mul(acc, b);
  ok = ok && binomial(2 * comp.n1, e[0], b) && mul(acc, b);
  ok = ok && binomial(2 * comp.n2, e[2], b) && mul(acc, b);
  ok = ok && binomial(2 * comp.n3, e[4], b) && mul(acc, b);
  for (unsigned x : e) {
    if (!ok) break;
    std::uint64_t df = 1;
    for (unsigned f = 1; f + 1 <= x && ok; f += 2) ok = mul(df, f);
    ok = ok && mul(acc, df);
  }
  if (ok) {
    c.value = acc;
    return c;
  }

  const auto& lf = log_factorials();
  c.exact = false;
  c.log_value = lf[n] - lf[comp.n1] - lf[comp.n2] - lf[comp.n3];
  c.log_value += lf[2 * comp.n1] - lf[e[0]] - lf[e[1]];
  c.log_value += lf[2 * comp.n2] - lf[e[2]] - lf[e[3]];
  c.log_value += lf[2 * comp.n3] - lf[e[4]] - lf[e[5]];
  for (unsigned x : e) c.log_value += log_odd_double_factorial(x);
  return c;
}

} // namespace

double sn_sum(unsigned n, double m_i, double m_j, double kT)
{
  if (!(m_i > 0.0) || !(m_j > 0.0) || !(kT > 0.0)) throw ValidationError("sn_sum: masses and kT must be > 0");
  if (n == 0) throw ValidationError("sn_sum: n must be >= 1");
  const auto comps = compositions3(n);

  std::vector<double> pow_i(n + 1), pow_j(n + 1);
  pow_i[0] = pow_j[0] = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    pow_i[k] = pow_i[k - 1] * (kT / m_i);
    pow_j[k] = pow_j[k - 1] * (kT / m_j);
  }

  double sum = 0.0;
  for (const auto& comp : comps) {
    for (const auto& [a, b] : even_splits(2 * comp.n1)) {
      for (const auto& [g, d] : even_splits(2 * comp.n2)) {
        for (const auto& [r, e] : even_splits(2 * comp.n3)) {
          const std::array<unsigned, 6> ex{a, b, g, d, r, e};
          const Coefficient coeff = term_coefficient(n, comp, ex);
          const double scale = pow_i[(a + g + r) / 2] * pow_j[(b + d + e) / 2];
          if (coeff.exact) {
            sum += static_cast<double>(coeff.value) * scale;
          } else {
            sum += static_cast<double>(std::exp(coeff.log_value + std::log(static_cast<long double>(scale))));
          }
        }
      }
    }
  }
  return sum;
}

double delta_tilde_term(unsigned n, double m_i, double m_j, double kT, double b_l1)
{
  const double reduced = m_i * m_j / (m_i + m_j);
  switch (n) {
  case 0:
    return 2.0 * M_PI * reduced * b_l1 / kT;
  case 1:
    return 10.0 * M_PI * b_l1;
  default:
    return (2.0 * M_PI * b_l1 / kT) * reduced * sn_sum(n, m_i, m_j, kT);
  }
}

double delta_tilde_series_term_n1(double m_i, double m_j, double kT, double b_l1)
{
  return (2.0 * M_PI * b_l1 / kT) * (m_i * m_j / (m_i + m_j)) * sn_sum(1, m_i, m_j, kT);
}

double delta_tilde(const MixtureSpec& spec, const AnalyticKineticKernel& kernel, double b_l1, std::size_t i,
                   std::size_t j)
{
  if (i == j) throw ValidationError("delta_tilde: i and j must differ");
  if (i >= spec.size() || j >= spec.size()) throw ValidationError("delta_tilde: species index out of range");
  if (kernel.truncation_order() > kMaxSeriesOrder) {
    throw ValidationError("delta_tilde: kernel order exceeds " + std::to_string(kMaxSeriesOrder));
  }
  // Evaluate in canonical pair order so (i, j) and (j, i) agree bit for bit.
  if (i > j) std::swap(i, j);
  const double m_i = spec.mass(i);
  const double m_j = spec.mass(j);
  const double kT = spec.kT();
  double sum = 0.0;
  for (std::size_t n = 0; n < kernel.coefficients.size(); ++n) {
    const double a = kernel.coefficients[n];
    if (a == 0.0) continue;
    sum += a * delta_tilde_term(static_cast<unsigned>(n), m_i, m_j, kT, b_l1);
  }
  return sum;
}

DeltaMatrix delta_matrix(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                         const AngularKernelSet& angular)
{
  if (angular.species_count() != spec.size()) {
    throw ValidationError("delta_matrix: angular kernel set does not match the mixture size");
  }
  DeltaMatrix out{PairMatrix<double>(spec.size()), kernel.truncation_order(), spec.kT(), spec.masses()};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      const double value = delta_tilde(spec, kernel, angular.l1_norm(i, j), i, j);
      if (!std::isfinite(value)) {
        throw NumericalError("delta_matrix: non-finite coefficient for pair (" + spec.species[i].name + ", " +
                             spec.species[j].name + ")");
      }
      out.values(i, j) = value;
    }
  }
  return out;
}

Eigen::MatrixXd plain_delta_matrix(const DeltaMatrix& delta)
{
  const auto order = static_cast<Eigen::Index>(delta.values.order());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(order, order);
  for (Eigen::Index i = 0; i < order; ++i) {
    for (Eigen::Index j = 0; j < order; ++j) {
      if (i == j) continue;
      out(i, j) = delta_plain(delta.values(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                              delta.masses(i), delta.kT);
    }
  }
  return out;
}

DiffusionMatrix diffusion_matrix(const DeltaMatrix& delta, double c_total)
{
  if (!(c_total > 0.0)) throw ValidationError("diffusion_matrix: total concentration must be > 0");
  const std::size_t order = delta.values.order();
  DiffusionMatrix out{PairMatrix<double>(order)};
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      const double d = delta.values(i, j);
      if (!(d > 0.0)) {
        throw NumericalError("diffusion_matrix: friction coefficient for pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") is " + std::to_string(d) + ", must be > 0");
      }
      out.values(i, j) = 1.0 / (c_total * d);
    }
  }
  return out;
}

DiffusionMatrix diffusion_matrix(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                                 const AngularKernelSet& angular)
{
  const DeltaMatrix delta = delta_matrix(spec, kernel, angular);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      if (!(delta.values(i, j) > 0.0)) {
        throw NumericalError("diffusion_matrix: friction coefficient for pair (" + spec.species[i].name + ", " +
                             spec.species[j].name + ") is " + std::to_string(delta.values(i, j)) + ", must be > 0");
      }
    }
  }
  return diffusion_matrix(delta, spec.total_concentration);
}

DeltaMatrix delta_from_diffusion(const DiffusionMatrix& d, const MixtureSpec& spec)
{
  if (d.order() != spec.size()) throw ValidationError("delta_from_diffusion: size mismatch");
  DeltaMatrix out{PairMatrix<double>(d.order()), 0, spec.kT(), spec.masses()};
  for (std::size_t i = 0; i < d.order(); ++i) {
    for (std::size_t j = i + 1; j < d.order(); ++j) {
      if (!(d(i, j) > 0.0)) throw ValidationError("delta_from_diffusion: diffusion coefficients must be > 0");
      out.values(i, j) = 1.0 / (spec.total_concentration * d(i, j));
    }
  }
  return out;
}

} // namespace msdiff
