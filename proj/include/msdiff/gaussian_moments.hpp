#pragma once

#include <array>
#include <cstdint>

namespace msdiff {

// Monomial powers of the three velocity components.
struct ExponentTriple {
  unsigned alpha = 0, beta = 0, gamma = 0;

  unsigned degree() const noexcept { return alpha + beta + gamma; }
  bool all_even() const noexcept { return (alpha | beta | gamma) % 2 == 0; }
};

// Powers (alpha, beta, gamma, delta, rho, eta) of
// v1, v*1, v2, v*2, v3, v*3 in that order.
struct ExponentSextuple {
  std::array<unsigned, 6> e{};

  bool all_even() const noexcept;
  // Exponents acting on v (alpha, gamma, rho) and on v* (beta, delta, eta).
  ExponentTriple first() const noexcept { return {e[0], e[2], e[4]}; }
  ExponentTriple second() const noexcept { return {e[1], e[3], e[5]}; }
};

// (x - 1)(x - 3)...1 for even x, 1 for x = 0. Throws NumericalError on 64-bit
// overflow and ValidationError on odd x.
std::uint64_t odd_double_factorial(unsigned x);

// Product of odd_double_factorial over all six exponents.
std::uint64_t double_factorial_product(const ExponentSextuple& e);

// Normalized centered Maxwellian moment
//   (m / 2 pi kT)^{3/2} int v1^a v2^b v3^c exp(-m|v|^2 / 2kT) dv.
double gaussian_moment_3d(double mass, double kT, const ExponentTriple& e);

// Moment of the product of two normalized Maxwellians in v (mass m_i) and
// v* (mass m_j).
double gaussian_moment_6d(double m_i, double m_j, double kT, const ExponentSextuple& e);

} // namespace msdiff
