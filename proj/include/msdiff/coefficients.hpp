#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "msdiff/collision.hpp"
#include "msdiff/errors.hpp"
#include "msdiff/mixture.hpp"

namespace msdiff {

// (n1, n2, n3) with n1 + n2 + n3 = n.
struct Composition3 {
  unsigned n1 = 0, n2 = 0, n3 = 0;

  unsigned sum() const noexcept { return n1 + n2 + n3; }
  friend bool operator==(const Composition3&, const Composition3&) = default;
};

inline constexpr unsigned kMaxSeriesOrder = 30;

// All compositions of n into three parts, lexicographic in (n1, n2, n3).
std::vector<Composition3> compositions3(unsigned n, unsigned max_n = kMaxSeriesOrder);

// All (alpha, beta), both even, alpha + beta = total; zero entries included.
std::vector<std::pair<unsigned, unsigned>> even_splits(unsigned total);

/// Centered Gaussian expectation of |v - v*|^{2n} expanded by the multinomial
/// and binomial theorems:
///   sum_{n1+n2+n3=n} n!/(n1! n2! n3!)
///     sum_{even splits} (2n1)!/(a! b!) (2n2)!/(g! d!) (2n3)!/(r! e!)
///       E(a, b, g, d, r, e) (kT/m_i)^{(a+g+r)/2} (kT/m_j)^{(b+d+e)/2}
double sn_sum(unsigned n, double m_i, double m_j, double kT);

/// Symmetric per-pair storage; a single value backs both (i, j) and (j, i).
template <typename Scalar>
class PairMatrix {
public:
  PairMatrix() = default;
  explicit PairMatrix(std::size_t order) : order_(order), values_(order * (order - 1) / 2, Scalar(0)) {}

  std::size_t order() const noexcept { return order_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return values_[slot(i, j)]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return values_[slot(i, j)]; }

  // Dense view with a zero diagonal.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const
  {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(order_, order_);
    for (std::size_t i = 0; i < order_; ++i) {
      for (std::size_t j = i + 1; j < order_; ++j) {
        out(i, j) = out(j, i) = (*this)(i, j);
      }
    }
    return out;
  }

  Scalar max_value() const
  {
    Scalar m = values_.empty() ? Scalar(0) : values_.front();
    for (const auto& v : values_) m = std::max(m, v);
    return m;
  }

private:
  std::size_t slot(std::size_t i, std::size_t j) const
  {
    if (i == j || i >= order_ || j >= order_) {
      throw ValidationError("PairMatrix: index pair must be distinct and in range");
    }
    if (i > j) std::swap(i, j);
    return i * order_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t order_ = 0;
  std::vector<Scalar> values_;
};

// Friction coefficients Delta~_ij.
struct DeltaMatrix {
  PairMatrix<double> values;
  std::size_t truncation = 0;
  double kT = 1.0;
  Eigen::VectorXd masses;
};

// Binary diffusion coefficients D_ij = 1 / (c Delta~_ij).
struct DiffusionMatrix {
  PairMatrix<double> values;

  std::size_t order() const noexcept { return values.order(); }
  double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
};

/// Closed-form friction coefficient for one species pair:
///   a0 2 pi m_i m_j |b| / ((m_i + m_j) kT) + a1 10 pi |b|
///   + sum_{n>=2} a_n (2 pi |b| / kT) m_i m_j / (m_i + m_j) sn_sum(n)
double delta_tilde(const MixtureSpec& spec, const AnalyticKineticKernel& kernel, double b_l1,
                   std::size_t i, std::size_t j);

// Single n-th term of delta_tilde with a_n = 1.
double delta_tilde_term(unsigned n, double m_i, double m_j, double kT, double b_l1);

// What the generic n >= 2 series term gives at n = 1 (6 pi |b|), kept for the
// oracle-check discrepancy report.
double delta_tilde_series_term_n1(double m_i, double m_j, double kT, double b_l1);

// Delta_ij = kT Delta~_ij / m_i
inline double delta_plain(double delta_tilde_value, double m_i, double kT) { return kT * delta_tilde_value / m_i; }

DeltaMatrix delta_matrix(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                         const AngularKernelSet& angular);

// Non-symmetric matrix of Delta_ij (zero diagonal).
Eigen::MatrixXd plain_delta_matrix(const DeltaMatrix& delta);

DiffusionMatrix diffusion_matrix(const DeltaMatrix& delta, double c_total);
DiffusionMatrix diffusion_matrix(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                                 const AngularKernelSet& angular);

// Friction coefficients back from diffusion coefficients, Delta~ = 1 / (c D).
DeltaMatrix delta_from_diffusion(const DiffusionMatrix& d, const MixtureSpec& spec);

} // namespace msdiff
