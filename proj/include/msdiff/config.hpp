#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "msdiff/collision.hpp"
#include "msdiff/grid.hpp"
#include "msdiff/mixture.hpp"
#include "msdiff/quadrature.hpp"

namespace msdiff {

struct KernelConfig {
  AnalyticKineticKernel kernel;
  std::optional<HardSphereFit> fit; // set when the kernel came from a fit request
  double validation_r_max = 10.0;
};

struct SolverConfig {
  Grid1D grid;
  double t_end = 0.05;
  std::optional<double> dt;
  std::size_t output_every = 100;
  std::vector<SpeciesProfile> initial; // one per species, in species order
};

struct SweepConfig {
  std::vector<double> epsilon{0.2, 0.1, 0.05};
};

struct RunConfig {
  MixtureSpec mixture;
  KernelConfig kernel;
  AngularKernelSet angular{0};
  std::optional<SolverConfig> solver;
  SweepConfig sweep;
  QuadratureConfig oracle;
};

// Parses and validates a YAML run configuration. Relative angular table paths
// resolve against the config file's directory.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text, const std::filesystem::path& base_dir = {});

// Two-column CSV (eta, b) with a header line.
AngularKernel read_angular_table(const std::filesystem::path& path);

} // namespace msdiff
