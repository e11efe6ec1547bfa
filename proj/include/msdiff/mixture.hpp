#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace msdiff {

struct Species {
  std::string name;
  double mass = 1.0;
};

// Species order is fixed at construction; every pairwise matrix downstream is
// indexed by it.
struct MixtureSpec {
  std::vector<Species> species;
  double temperature = 1.0;
  double boltzmann_k = 1.0;
  double total_concentration = 1.0;

  std::size_t size() const noexcept { return species.size(); }
  double kT() const noexcept { return boltzmann_k * temperature; }
  double mass(std::size_t i) const { return species.at(i).mass; }
  Eigen::VectorXd masses() const;
};

// Returns the mixture unchanged when it is admissible, otherwise throws
// ValidationError naming the first violated invariant.
MixtureSpec validate_mixture(MixtureSpec spec);

Eigen::VectorXd mole_fractions(const Eigen::Ref<const Eigen::VectorXd>& concentrations, double c_total);

} // namespace msdiff
