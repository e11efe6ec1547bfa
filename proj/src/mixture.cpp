#include "msdiff/mixture.hpp"

#include <set>

#include "msdiff/errors.hpp"

namespace msdiff {

Eigen::VectorXd MixtureSpec::masses() const
{
  Eigen::VectorXd m(species.size());
  for (std::size_t i = 0; i < species.size(); ++i) m(static_cast<Eigen::Index>(i)) = species[i].mass;
  return m;
}

MixtureSpec validate_mixture(MixtureSpec spec)
{
  if (spec.species.size() < 2) {
    throw ValidationError("mixture: I >= 2 required (got " + std::to_string(spec.species.size()) + " species)");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < spec.species.size(); ++i) {
    const auto& s = spec.species[i];
    if (!(s.mass > 0.0)) {
      throw ValidationError("mixture: species[" + std::to_string(i) + "] '" + s.name + "' mass must be > 0");
    }
    if (!names.insert(s.name).second) {
      throw ValidationError("mixture: duplicate species name '" + s.name + "'");
    }
  }
  if (!(spec.temperature > 0.0)) throw ValidationError("mixture: temperature must be > 0");
  if (!(spec.boltzmann_k > 0.0)) throw ValidationError("mixture: boltzmann_k must be > 0");
  if (!(spec.total_concentration > 0.0)) throw ValidationError("mixture: total_concentration must be > 0");
  return spec;
}

Eigen::VectorXd mole_fractions(const Eigen::Ref<const Eigen::VectorXd>& concentrations, double c_total)
{
  if (!(c_total > 0.0)) throw ValidationError("mole_fractions: c_total must be > 0");
  if ((concentrations.array() < 0.0).any()) throw ValidationError("mole_fractions: concentrations must be >= 0");
  return concentrations / c_total;
}

} // namespace msdiff
