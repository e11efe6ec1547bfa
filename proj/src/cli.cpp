#include "msdiff/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msdiff/coefficients.hpp"
#include "msdiff/config.hpp"
#include "msdiff/csv_output.hpp"
#include "msdiff/errors.hpp"
#include "msdiff/maxwell_stefan.hpp"
#include "msdiff/moment_system.hpp"
#include "msdiff/oracle_check.hpp"

namespace msdiff {

namespace {

void print_error(std::ostream& err, const std::string& kind, const std::string& message, const std::string& where = {})
{
  nlohmann::ordered_json j;
  j["status"] = "error";
  j["kind"] = kind;
  if (!where.empty()) j["where"] = where;
  j["message"] = message;
  err << j.dump() << '\n';
}

std::string join(const std::vector<double>& values)
{
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? " " : "") + format_double(values[k]);
  return out;
}

std::vector<std::string> species_names(const MixtureSpec& spec)
{
  std::vector<std::string> names;
  for (const auto& s : spec.species) names.push_back(s.name);
  return names;
}

CsvMetadata run_metadata(const RunConfig& cfg)
{
  std::string names;
  for (const auto& n : species_names(cfg.mixture)) names += (names.empty() ? "" : " ") + n;
  std::vector<double> masses;
  for (const auto& s : cfg.mixture.species) masses.push_back(s.mass);
  return {{"species", names},
          {"masses", join(masses)},
          {"kT", format_double(cfg.mixture.kT())},
          {"total_concentration", format_double(cfg.mixture.total_concentration)},
          {"kernel_coefficients", join(cfg.kernel.kernel.coefficients)}};
}

const SolverConfig& require_solver(const RunConfig& cfg)
{
  if (!cfg.solver) throw ConfigError("solver", "this subcommand needs a 'solver' section");
  return *cfg.solver;
}

std::string snapshot_name(const char* prefix, std::size_t k)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05zu.csv", prefix, k);
  return buf;
}

int run_coeffs(const std::string& config, const std::string& out_path, const std::string& delta_out, std::ostream& out)
{
  const RunConfig cfg = parse_config(config);
  const DeltaMatrix delta = delta_matrix(cfg.mixture, cfg.kernel.kernel, cfg.angular);
  const DiffusionMatrix d = diffusion_matrix(delta, cfg.mixture.total_concentration);
  CsvMetadata meta = run_metadata(cfg);
  if (cfg.kernel.fit) meta.emplace_back("hard_sphere_fit_max_abs_error", format_double(cfg.kernel.fit->max_abs_error));

  CsvMetadata d_meta{{"quantity", "binary_diffusion_coefficient"}};
  d_meta.insert(d_meta.end(), meta.begin(), meta.end());
  write_matrix_csv(d.values.dense(), d_meta, out_path);
  out << "wrote " << out_path << '\n';
  if (!delta_out.empty()) {
    CsvMetadata f_meta{{"quantity", "friction_coefficient"}};
    f_meta.insert(f_meta.end(), meta.begin(), meta.end());
    write_matrix_csv(delta.values.dense(), f_meta, delta_out);
    out << "wrote " << delta_out << '\n';
  }
  return 0;
}

int run_oracle_check(const std::string& config, const std::string& out_path, std::ostream& out)
{
  const RunConfig cfg = parse_config(config);
  const auto rows = oracle_check(cfg.mixture, cfg.kernel.kernel, cfg.angular, cfg.oracle);
  std::ostringstream csv;
  write_oracle_check(csv, rows);
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_text_file(out_path, csv.str());
    const auto flagged = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.agrees; });
    out << "wrote " << out_path << " (" << rows.size() << " rows, " << flagged << " flagged)\n";
  }
  return 0;
}

int run_ms(const std::string& config, const std::string& out_dir, std::ostream& out)
{
  const RunConfig cfg = parse_config(config);
  const SolverConfig& solver = require_solver(cfg);
  const MaxwellStefanSystem system{solver.grid,
                                   diffusion_matrix(cfg.mixture, cfg.kernel.kernel, cfg.angular),
                                   cfg.mixture.total_concentration};
  const double bound = max_stable_dt(system);
  const double dt = solver.dt.value_or(bound);
  if (dt > bound * (1.0 + 1e-12)) {
    throw NumericalError("ms-run: dt = " + format_double(dt) + " exceeds the stability bound " + format_double(bound));
  }
  const auto trajectory =
    run(make_state(sample_profiles(solver.initial, solver.grid), system), system, solver.t_end, dt, solver.output_every);

  std::filesystem::create_directories(out_dir);
  const auto names = species_names(cfg.mixture);
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    std::ostringstream os;
    write_ms_snapshot(os, trajectory[k], solver.grid, names, run_metadata(cfg));
    write_text_file(std::filesystem::path(out_dir) / snapshot_name("ms", k), os.str());
  }
  out << "wrote " << trajectory.size() << " snapshots to " << out_dir << '\n';
  return 0;
}

int run_kinetic_cmd(const std::string& config, double eps, const std::string& out_dir, std::ostream& out)
{
  const RunConfig cfg = parse_config(config);
  const SolverConfig& solver = require_solver(cfg);
  const MomentSystem system =
    make_moment_system(solver.grid, cfg.mixture, delta_matrix(cfg.mixture, cfg.kernel.kernel, cfg.angular));
  const MomentState initial = make_moment_state(sample_profiles(solver.initial, solver.grid), solver.grid, eps);
  const double dt = solver.dt.value_or(stable_step_bounds(initial, system).min());
  KineticRunStats stats;
  const auto trajectory = run_kinetic(initial, system, solver.t_end, dt, solver.output_every, &stats);

  std::filesystem::create_directories(out_dir);
  const auto names = species_names(cfg.mixture);
  CsvMetadata meta = run_metadata(cfg);
  meta.emplace_back("max_momentum_exchange_imbalance", format_double(stats.max_momentum_exchange_imbalance));
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    std::ostringstream os;
    write_kinetic_snapshot(os, trajectory[k], solver.grid, names, meta);
    write_text_file(std::filesystem::path(out_dir) / snapshot_name("kinetic", k), os.str());
  }
  out << "wrote " << trajectory.size() << " snapshots to " << out_dir << " (" << stats.steps << " steps)\n";
  return 0;
}

int run_sweep(const std::string& config, std::vector<double> eps, const std::string& out_path, std::ostream& out)
{
  const RunConfig cfg = parse_config(config);
  const SolverConfig& solver = require_solver(cfg);
  if (eps.empty()) eps = cfg.sweep.epsilon;
  SweepSetup setup{cfg.mixture, solver.grid, solver.initial,
                   delta_matrix(cfg.mixture, cfg.kernel.kernel, cfg.angular), solver.t_end, solver.dt};
  const SweepResult result = epsilon_sweep(setup, eps);
  std::ostringstream os;
  CsvMetadata meta = run_metadata(cfg);
  meta.emplace_back("t_end", format_double(solver.t_end));
  meta.emplace_back("n_cells", std::to_string(solver.grid.n_cells));
  write_sweep_table(os, result, meta);
  write_text_file(out_path, os.str());
  out << "wrote " << out_path << '\n';
  return 0;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Multicomponent diffusion coefficients, Maxwell-Stefan and moment-relaxation solvers", "msdiff"};
  app.require_subcommand(1);

  std::string config, out_path, delta_out, out_dir;
  double eps = 0.0;
  std::vector<double> eps_list;

  auto* coeffs = app.add_subcommand("coeffs", "Binary diffusion coefficient matrix as CSV");
  coeffs->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  coeffs->add_option("--out", out_path, "Output CSV for the diffusion coefficients")->required();
  coeffs->add_option("--delta-out", delta_out, "Optional output CSV for the friction coefficients");

  auto* oracle = app.add_subcommand("oracle-check", "Closed-form coefficients against 6-D quadrature");
  oracle->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", out_path, "Output CSV (stdout when omitted)");

  auto* ms = app.add_subcommand("ms-run", "Maxwell-Stefan finite-volume run");
  ms->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  ms->add_option("--out-dir", out_dir, "Directory for snapshot CSVs")->required();

  auto* kinetic = app.add_subcommand("kinetic-run", "Moment-system run at one epsilon");
  kinetic->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  kinetic->add_option("--eps", eps, "Scaling parameter in (0, 1)")->required();
  kinetic->add_option("--out-dir", out_dir, "Directory for snapshot CSVs")->required();

  auto* sweep = app.add_subcommand("sweep", "Moment system vs Maxwell-Stefan over a list of epsilon");
  sweep->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  sweep->add_option("--eps", eps_list, "Comma-separated epsilon values (default from config)")->delimiter(',');
  sweep->add_option("--out", out_path, "Output CSV")->required();

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      print_error(err, "usage", "unknown subcommand '" + args.front() + "'");
      return 2;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 2;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(config, out_path, delta_out, out);
    if (oracle->parsed()) return run_oracle_check(config, out_path, out);
    if (ms->parsed()) return run_ms(config, out_dir, out);
    if (kinetic->parsed()) return run_kinetic_cmd(config, eps, out_dir, out);
    if (sweep->parsed()) return run_sweep(config, eps_list, out_path, out);
  } catch (const ConfigError& e) {
    print_error(err, "config", e.detail(), e.where());
    return 3;
  } catch (const ValidationError& e) {
    print_error(err, "validation", e.what());
    return 4;
  } catch (const NumericalError& e) {
    print_error(err, "numerical", e.what());
    return 5;
  } catch (const std::exception& e) {
    print_error(err, "io", e.what());
    return 6;
  }
  print_error(err, "usage", "no subcommand given");
  return 2;
}

int dispatch(int argc, char** argv)
{
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return dispatch(args, std::cout, std::cerr);
}

} // namespace msdiff
