#include "msdiff/gaussian_moments.hpp"

#include <cmath>
#include <string>

#include "msdiff/errors.hpp"

namespace msdiff {

bool ExponentSextuple::all_even() const noexcept
{
  for (unsigned x : e) {
    if (x % 2 != 0) return false;
  }
  return true;
}

std::uint64_t odd_double_factorial(unsigned x)
{
  if (x % 2 != 0) throw ValidationError("odd_double_factorial: exponent " + std::to_string(x) + " is odd");
  std::uint64_t acc = 1;
  for (unsigned f = 1; f + 1 <= x; f += 2) {
    if (__builtin_mul_overflow(acc, static_cast<std::uint64_t>(f), &acc)) {
      throw NumericalError("odd_double_factorial: (" + std::to_string(x) + " - 1)!! overflows 64 bits");
    }
  }
  return acc;
}

std::uint64_t double_factorial_product(const ExponentSextuple& e)
{
  std::uint64_t acc = 1;
  for (unsigned x : e.e) {
    if (__builtin_mul_overflow(acc, odd_double_factorial(x), &acc)) {
      throw NumericalError("double_factorial_product: overflows 64 bits");
    }
  }
  return acc;
}

double gaussian_moment_3d(double mass, double kT, const ExponentTriple& e)
{
  if (!(mass > 0.0) || !(kT > 0.0)) throw ValidationError("gaussian_moment_3d: mass and kT must be > 0");
  if (!e.all_even()) return 0.0;
  const double product = static_cast<double>(odd_double_factorial(e.alpha)) *
                         static_cast<double>(odd_double_factorial(e.beta)) *
                         static_cast<double>(odd_double_factorial(e.gamma));
  return product * std::pow(kT / mass, 0.5 * static_cast<double>(e.degree()));
}

double gaussian_moment_6d(double m_i, double m_j, double kT, const ExponentSextuple& e)
{
  if (!(m_i > 0.0) || !(m_j > 0.0) || !(kT > 0.0)) {
    throw ValidationError("gaussian_moment_6d: masses and kT must be > 0");
  }
  if (!e.all_even()) return 0.0;
  return static_cast<double>(double_factorial_product(e)) *
         std::pow(kT / m_i, 0.5 * static_cast<double>(e.first().degree())) *
         std::pow(kT / m_j, 0.5 * static_cast<double>(e.second().degree()));
}

} // namespace msdiff
