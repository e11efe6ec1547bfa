#include "msdiff/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "msdiff/errors.hpp"

namespace msdiff {

namespace {

std::string location(const YAML::Node& node)
{
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return {};
  return " (line " + std::to_string(mark.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& path, const YAML::Node& node, const std::string& what)
{
  throw ConfigError(path + location(node), what);
}

void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> allowed)
{
  if (!node.IsMap()) fail(path, node, "expected a mapping");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!keys.count(key)) fail(path + "." + key, kv.first, "unknown key");
  }
}

template <typename T>
T read(const YAML::Node& node, const std::string& path)
{
  if (!node || node.IsNull()) fail(path, node, "missing required value");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    fail(path, node, "value has the wrong type");
  }
}

template <typename T>
T read_or(const YAML::Node& parent, const char* key, const std::string& path, T fallback)
{
  const YAML::Node node = parent[key];
  if (!node) return fallback;
  return read<T>(node, path + "." + key);
}

YAML::Node child(const YAML::Node& parent, const char* key, const std::string& path)
{
  const YAML::Node node = parent[key];
  if (!node) fail(path + "." + key, parent, "missing required section");
  return node;
}

MixtureSpec parse_mixture(const YAML::Node& node)
{
  const std::string path = "mixture";
  check_keys(node, path, {"species", "temperature", "boltzmann_k", "total_concentration"});
  MixtureSpec spec;
  spec.temperature = read<double>(child(node, "temperature", path), path + ".temperature");
  spec.boltzmann_k = read_or<double>(node, "boltzmann_k", path, 1.0);
  spec.total_concentration = read_or<double>(node, "total_concentration", path, 1.0);
  const YAML::Node species = child(node, "species", path);
  if (!species.IsSequence()) fail(path + ".species", species, "expected a list");
  for (std::size_t i = 0; i < species.size(); ++i) {
    const std::string p = path + ".species[" + std::to_string(i) + "]";
    check_keys(species[i], p, {"name", "mass"});
    spec.species.push_back({read<std::string>(species[i]["name"], p + ".name"), read<double>(species[i]["mass"], p + ".mass")});
  }
  try {
    return validate_mixture(std::move(spec));
  } catch (const ValidationError& e) {
    throw ConfigError(path, e.what());
  }
}

KernelConfig parse_kernel(const YAML::Node& node)
{
  const std::string path = "kernel";
  check_keys(node, path, {"coefficients", "hard_sphere_fit", "validation_r_max"});
  const bool has_coeffs = static_cast<bool>(node["coefficients"]);
  const bool has_fit = static_cast<bool>(node["hard_sphere_fit"]);
  if (has_coeffs == has_fit) fail(path, node, "exactly one of 'coefficients' or 'hard_sphere_fit' is required");

  KernelConfig out;
  if (has_coeffs) {
    out.kernel.coefficients = read<std::vector<double>>(node["coefficients"], path + ".coefficients");
    out.validation_r_max = read_or<double>(node, "validation_r_max", path, 10.0);
  } else {
    const YAML::Node fit = node["hard_sphere_fit"];
    const std::string p = path + ".hard_sphere_fit";
    check_keys(fit, p, {"r_max", "degree"});
    const auto r_max = read<double>(child(fit, "r_max", p), p + ".r_max");
    const auto degree = read<int>(child(fit, "degree", p), p + ".degree");
    if (degree < 0 || degree > static_cast<int>(20)) fail(p + ".degree", fit, "degree must lie in [0, 20]");
    try {
      out.fit = fit_hard_sphere(r_max, static_cast<std::size_t>(degree));
    } catch (const ValidationError& e) {
      throw ConfigError(p, e.what());
    }
    out.kernel = out.fit->kernel;
    out.validation_r_max = read_or<double>(node, "validation_r_max", path, r_max);
  }
  try {
    out.kernel = validate_kernel(std::move(out.kernel), out.validation_r_max);
  } catch (const ValidationError& e) {
    throw ConfigError(path, e.what());
  }
  return out;
}

std::size_t species_index(const MixtureSpec& spec, const YAML::Node& node, const std::string& path)
{
  const auto name = read<std::string>(node, path);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec.species[i].name == name) return i;
  }
  fail(path, node, "unknown species '" + name + "'");
}

AngularKernelSet parse_angular(const YAML::Node& node, const MixtureSpec& spec, const std::filesystem::path& base_dir)
{
  const std::string path = "angular";
  if (!node.IsSequence()) fail(path, node, "expected a list of per-pair entries");
  AngularKernelSet set(spec.size());
  for (std::size_t e = 0; e < node.size(); ++e) {
    const std::string p = path + "[" + std::to_string(e) + "]";
    const YAML::Node entry = node[e];
    check_keys(entry, p, {"pair", "constant", "table", "l1_norm"});
    const YAML::Node pair = child(entry, "pair", p);
    if (!pair.IsSequence() || pair.size() != 2) fail(p + ".pair", pair, "expected two species names");
    const std::size_t i = species_index(spec, pair[0], p + ".pair[0]");
    const std::size_t j = species_index(spec, pair[1], p + ".pair[1]");
    if (i == j) fail(p + ".pair", pair, "a pair needs two distinct species");
    if (set.has(i, j)) fail(p + ".pair", pair, "duplicate entry for this pair");

    const int kinds = (entry["constant"] ? 1 : 0) + (entry["table"] ? 1 : 0) + (entry["l1_norm"] ? 1 : 0);
    if (kinds != 1) fail(p, entry, "exactly one of 'constant', 'table' or 'l1_norm' is required");
    try {
      if (entry["constant"]) {
        set.set(i, j, AngularKernel::constant(read<double>(entry["constant"], p + ".constant")));
      } else if (entry["table"]) {
        std::filesystem::path table = read<std::string>(entry["table"], p + ".table");
        if (table.is_relative()) table = base_dir / table;
        set.set(i, j, read_angular_table(table));
      } else {
        set.set_l1_norm(i, j, read<double>(entry["l1_norm"], p + ".l1_norm"));
      }
    } catch (const ValidationError& ex) {
      throw ConfigError(p, ex.what());
    }
  }
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      if (!set.has(i, j)) {
        throw ConfigError(path, "missing entry for pair (" + spec.species[i].name + ", " + spec.species[j].name + ")");
      }
    }
  }
  return set;
}

ProfileTerm parse_term(const YAML::Node& node, const std::string& path)
{
  if (!node.IsMap() || node.size() != 1) fail(path, node, "expected one of {constant, sine, gaussian}");
  const auto kind = node.begin()->first.as<std::string>();
  const YAML::Node body = node.begin()->second;
  const std::string p = path + "." + kind;
  if (kind == "constant") return ConstantTerm{read<double>(body, p)};
  if (kind == "sine") {
    check_keys(body, p, {"amplitude", "wavenumber", "phase"});
    return SineTerm{read<double>(child(body, "amplitude", p), p + ".amplitude"), read_or<double>(body, "wavenumber", p, 1.0),
                    read_or<double>(body, "phase", p, 0.0)};
  }
  if (kind == "gaussian") {
    check_keys(body, p, {"center", "width", "height"});
    GaussianTerm g{read<double>(child(body, "center", p), p + ".center"), read<double>(child(body, "width", p), p + ".width"),
                   read<double>(child(body, "height", p), p + ".height")};
    if (!(g.width > 0.0)) fail(p + ".width", body, "width must be > 0");
    return g;
  }
  fail(path, node, "unknown profile term '" + kind + "'");
}

SolverConfig parse_solver(const YAML::Node& node, const MixtureSpec& spec)
{
  const std::string path = "solver";
  check_keys(node, path, {"grid", "t_end", "dt", "output_every", "initial"});
  SolverConfig out;
  const YAML::Node grid = child(node, "grid", path);
  check_keys(grid, path + ".grid", {"x_min", "x_max", "n_cells", "boundary"});
  out.grid.x_min = read_or<double>(grid, "x_min", path + ".grid", 0.0);
  out.grid.x_max = read_or<double>(grid, "x_max", path + ".grid", 1.0);
  const int cells = read_or<int>(grid, "n_cells", path + ".grid", 64);
  if (cells < 8) fail(path + ".grid.n_cells", grid, "n_cells must be >= 8");
  out.grid.n_cells = static_cast<std::size_t>(cells);
  try {
    out.grid.boundary = parse_boundary(read_or<std::string>(grid, "boundary", path + ".grid", "periodic"));
    out.grid = validate_grid(out.grid);
  } catch (const ValidationError& e) {
    throw ConfigError(path + ".grid", e.what());
  }

  out.t_end = read<double>(child(node, "t_end", path), path + ".t_end");
  if (!(out.t_end >= 0.0)) fail(path + ".t_end", node, "t_end must be >= 0");
  if (node["dt"]) {
    out.dt = read<double>(node["dt"], path + ".dt");
    if (!(*out.dt > 0.0)) fail(path + ".dt", node, "dt must be > 0");
  }
  const int every = read_or<int>(node, "output_every", path, 100);
  if (every < 0) fail(path + ".output_every", node, "output_every must be >= 0");
  out.output_every = static_cast<std::size_t>(every);

  const YAML::Node initial = child(node, "initial", path);
  if (!initial.IsMap()) fail(path + ".initial", initial, "expected a mapping from species name to profile terms");
  out.initial.resize(spec.size());
  std::vector<bool> seen(spec.size(), false);
  for (const auto& kv : initial) {
    const std::string p = path + ".initial." + kv.first.as<std::string>();
    const std::size_t i = species_index(spec, kv.first, p);
    if (!kv.second.IsSequence()) fail(p, kv.second, "expected a list of profile terms");
    for (std::size_t t = 0; t < kv.second.size(); ++t) {
      out.initial[i].push_back(parse_term(kv.second[t], p + "[" + std::to_string(t) + "]"));
    }
    seen[i] = true;
  }
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!seen[i]) throw ConfigError(path + ".initial", "missing profile for species '" + spec.species[i].name + "'");
  }

  const Eigen::MatrixXd c = sample_profiles(out.initial, out.grid);
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    if (c.col(k).minCoeff() < 0.0) {
      throw ConfigError(path + ".initial", "profiles are negative at x = " + std::to_string(out.grid.cell_center(static_cast<std::size_t>(k))));
    }
    if (std::abs(c.col(k).sum() - spec.total_concentration) > 1e-10) {
      throw ConfigError(path + ".initial", "profiles do not sum to total_concentration at x = " +
                                             std::to_string(out.grid.cell_center(static_cast<std::size_t>(k))));
    }
  }
  return out;
}

SweepConfig parse_sweep(const YAML::Node& node)
{
  check_keys(node, "sweep", {"epsilon"});
  SweepConfig out;
  out.epsilon = read<std::vector<double>>(child(node, "epsilon", "sweep"), "sweep.epsilon");
  if (out.epsilon.empty()) fail("sweep.epsilon", node, "at least one value required");
  for (double e : out.epsilon) {
    if (!(e > 0.0) || !(e < 1.0)) fail("sweep.epsilon", node, "values must lie in (0, 1)");
  }
  return out;
}

QuadratureConfig parse_oracle(const YAML::Node& node)
{
  const std::string path = "oracle";
  check_keys(node, path, {"nodes_per_axis", "theta_nodes_per_axis", "richardson_eps"});
  QuadratureConfig q;
  q.nodes_per_axis = read_or<int>(node, "nodes_per_axis", path, q.nodes_per_axis);
  q.theta_nodes_per_axis = read_or<int>(node, "theta_nodes_per_axis", path, q.theta_nodes_per_axis);
  if (node["richardson_eps"]) {
    const auto eps = read<std::vector<double>>(node["richardson_eps"], path + ".richardson_eps");
    if (eps.size() != 2) fail(path + ".richardson_eps", node, "expected two values");
    q.richardson_eps_coarse = eps[0];
    q.richardson_eps_fine = eps[1];
  }
  try {
    return validate_quadrature(q);
  } catch (const ValidationError& e) {
    throw ConfigError(path, e.what());
  }
}

} // namespace

AngularKernel read_angular_table(const std::filesystem::path& path)
{
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open angular table '" + path.string() + "'");
  std::string line;
  std::getline(file, line); // header
  std::vector<double> eta, b;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double e = 0.0, v = 0.0;
    char comma = 0;
    if (!(ss >> e >> comma >> v) || comma != ',') {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected 'eta,b'");
    }
    eta.push_back(e);
    b.push_back(v);
  }
  if (eta.size() < 3) throw ValidationError(path.string() + ": table needs at least three rows");
  for (std::size_t k = 0; k < eta.size(); ++k) {
    if (std::abs(eta[k] - AngularKernel::node(k, eta.size())) > 1e-9) {
      throw ValidationError(path.string() + ": eta column must be a uniform grid over [-1, 1]");
    }
  }
  return AngularKernel::tabulated(std::move(b));
}

RunConfig parse_config_string(const std::string& text, const std::filesystem::path& base_dir)
{
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1),
                      e.msg);
  }
  if (!root.IsMap()) throw ConfigError("", "config must be a mapping");
  check_keys(root, "config", {"mixture", "kernel", "angular", "solver", "sweep", "oracle"});

  RunConfig cfg;
  cfg.mixture = parse_mixture(child(root, "mixture", "config"));
  cfg.kernel = parse_kernel(child(root, "kernel", "config"));
  cfg.angular = parse_angular(child(root, "angular", "config"), cfg.mixture, base_dir);
  if (root["solver"]) cfg.solver = parse_solver(root["solver"], cfg.mixture);
  if (root["sweep"]) cfg.sweep = parse_sweep(root["sweep"]);
  if (root["oracle"]) cfg.oracle = parse_oracle(root["oracle"]);
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path)
{
  std::ifstream file(path);
  if (!file) throw ConfigError(path.string(), "cannot open config file");
  std::stringstream ss;
  ss << file.rdbuf();
  try {
    return parse_config_string(ss.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.where(), e.detail());
  }
}

} // namespace msdiff
