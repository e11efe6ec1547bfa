#include <gtest/gtest.h>

#include "msdiff/errors.hpp"
#include "msdiff/mixture.hpp"

using namespace msdiff;

namespace {

MixtureSpec two_species()
{
  MixtureSpec s;
  s.species = {{"A", 1.0}, {"B", 2.0}};
  return s;
}

} // namespace

TEST(Mixture, AcceptsTwoSpecies)
{
  const MixtureSpec s = validate_mixture(two_species());
  EXPECT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s.kT(), 1.0);
  EXPECT_DOUBLE_EQ(s.masses()(1), 2.0);
}

TEST(Mixture, RejectsSingleSpecies)
{
  MixtureSpec s = two_species();
  s.species.pop_back();
  EXPECT_THROW(validate_mixture(s), ValidationError);
}

TEST(Mixture, RejectsZeroMass)
{
  MixtureSpec s = two_species();
  s.species[0].mass = 0.0;
  EXPECT_THROW(validate_mixture(s), ValidationError);
}

TEST(Mixture, RejectsDuplicateNamesAndNonPositiveScalars)
{
  MixtureSpec s = two_species();
  s.species[1].name = "A";
  EXPECT_THROW(validate_mixture(s), ValidationError);
  s = two_species();
  s.temperature = 0.0;
  EXPECT_THROW(validate_mixture(s), ValidationError);
  s = two_species();
  s.boltzmann_k = -1.0;
  EXPECT_THROW(validate_mixture(s), ValidationError);
  s = two_species();
  s.total_concentration = 0.0;
  EXPECT_THROW(validate_mixture(s), ValidationError);
}

TEST(MoleFractions, Examples)
{
  Eigen::VectorXd x = mole_fractions(Eigen::Vector2d(0.5, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(x(0), 0.5);
  EXPECT_DOUBLE_EQ(x(1), 0.5);
  x = mole_fractions(Eigen::Vector2d(1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(x(0), 1.0);
  EXPECT_DOUBLE_EQ(x(1), 0.0);
  x = mole_fractions(Eigen::Vector3d(0.2, 0.3, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(x(0), 0.2);
  EXPECT_DOUBLE_EQ(x(1), 0.3);
  EXPECT_DOUBLE_EQ(x(2), 0.5);
}

TEST(MoleFractions, RejectsNonPositiveTotal)
{
  EXPECT_THROW(mole_fractions(Eigen::Vector2d(0.5, 0.5), 0.0), ValidationError);
}
