#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "twoatom/couplings.hpp"
#include "twoatom/csv.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/runner.hpp"
#include "twoatom/scenario.hpp"

namespace twoatom::cli {
namespace {

// Flags shared by `run` and `sweep` that patch the loaded scenario.
struct ScenarioOverrides {
  std::string scenario_file;
  std::optional<double> x;
  std::optional<double> mu_dot_r;
  std::optional<double> delta;
  std::optional<std::size_t> points;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--scenario", scenario_file, "Scenario file (key = value)");
    cmd.add_option("--x", x, "Dimensionless separation k0*r12");
    cmd.add_option("--mu-dot-r", mu_dot_r, "Cosine between dipole and interatomic axis");
    cmd.add_option("--delta", delta, "Half-detuning in units of gamma; atom 1 sits at omega0 + delta");
    cmd.add_option("--points", points, "Number of output times");
  }

  Scenario build(const Scenario& fallback) const {
    Scenario s = scenario_file.empty() ? fallback : load_scenario(scenario_file);
    if (x || mu_dot_r) {
      Geometry g = s.geometry.value_or(*Scenario{}.geometry);
      if (x) g.x = *x;
      if (mu_dot_r) g.mu_dot_r = *mu_dot_r;
      s.geometry = g;
    }
    if (delta) s.delta = *delta;
    if (points) s.grid.n_points = *points;
    validate(s);
    return s;
  }
};

void emit(const Table& table, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_csv(out, table);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  write_csv(file, table);
  if (!file) throw ValidationError("failed writing output file '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement created by spontaneous emission from two dipole-coupled atoms"};
  app.require_subcommand(1);
  std::string out_path;

  auto* couplings = app.add_subcommand("couplings", "Collective damping and dipole-dipole shift");
  Geometry geometry{0.0, 0.0};
  double gamma = 1.0;
  couplings->add_option("--x", geometry.x, "Dimensionless separation k0*r12")->required();
  couplings->add_option("--mu-dot-r", geometry.mu_dot_r, "Cosine between dipole and axis");
  couplings->add_option("--gamma", gamma, "Single-atom decay rate");
  couplings->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* run_cmd = app.add_subcommand("run", "Evolve one scenario and write its trajectory");
  ScenarioOverrides run_overrides;
  run_overrides.add_to(*run_cmd);
  run_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "Summarize a scenario over one parameter");
  ScenarioOverrides sweep_overrides;
  sweep_overrides.add_to(*sweep_cmd);
  std::string axis_name;
  std::vector<double> values;
  sweep_cmd->add_option("--axis", axis_name, "x, mu_dot_r, delta, gamma12 or omega12")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated parameter values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* figure_cmd = app.add_subcommand("figure", "Write the curves of a reference figure");
  std::string figure_name;
  std::optional<std::size_t> figure_points;
  figure_cmd->add_option("name", figure_name, "fig2, fig3, fig4 or fig5")->required();
  figure_cmd->add_option("--points", figure_points, "Number of output times");
  figure_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (couplings->parsed()) {
      const CouplingRates r = rates_from_geometry(geometry, gamma);
      Table t{{"x", "mu_dot_r", "gamma", "gamma12", "omega12"},
              {{geometry.x, geometry.mu_dot_r, r.gamma, r.gamma12, r.omega12}}};
      emit(t, out_path, out);
    } else if (run_cmd->parsed()) {
      if (run_overrides.scenario_file.empty()) {
        throw ValidationError("run: --scenario is required");
      }
      const Scenario s = run_overrides.build(Scenario{});
      emit(trajectory_table(run_scenario(s), s.outputs), out_path, out);
    } else if (sweep_cmd->parsed()) {
      const Scenario base = sweep_overrides.build(figure_scenario(Figure::kFig2));
      const SweepAxis axis = parse_sweep_axis(axis_name);
      const auto rows = sweep(base, axis, values);
      emit(sweep_table(axis, rows), out_path, out);
      for (const auto& row : rows) {
        if (!row.ok()) err << "sweep: " << axis_name << " = " << row.value << ": " << row.error << '\n';
      }
    } else if (figure_cmd->parsed()) {
      emit(figure_table(parse_figure(figure_name), figure_points), out_path, out);
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace twoatom::cli
