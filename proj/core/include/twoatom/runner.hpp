#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twoatom/csv.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/scenario.hpp"

namespace twoatom {

/// One output row of a trajectory.
struct TrajectoryRecord {
  double t = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  double rho_ee = 0.0;
  double rho_ss = 0.0;
  double rho_aa = 0.0;
  double rho_gg = 0.0;
  double re_rho_as = 0.0;
  double im_rho_as = 0.0;
  double s_squared = 0.0;
};

TrajectoryRecord make_record(double t, const CollectiveState& c);

enum class EvolutionPath {
  kAuto,      // closed form when delta = 0 and away from the Dicke point
  kAnalytic,  // closed form; errors propagate
  kBlockOde,  // collective equations of motion, always applicable
};

struct RunOptions {
  EvolutionPath path = EvolutionPath::kAuto;
  IntegratorSettings integrator;
};

/// Evolves the scenario and evaluates concurrence and negativity at every
/// grid time. Numerical errors are rethrown with the scenario name attached.
std::vector<TrajectoryRecord> run_scenario(const Scenario& s, const RunOptions& options = {});

struct Peak {
  double value = 0.0;
  double time = 0.0;
};

/// Largest concurrence on the trajectory.
Peak max_concurrence(std::span<const TrajectoryRecord> records);

/// First strict interior local maximum of a positive concurrence; falls back
/// to the global maximum when the curve has none.
Peak first_maximum(std::span<const TrajectoryRecord> records);

/// Linear interpolation of the concurrence at time t; NaN outside the grid.
double concurrence_at(std::span<const TrajectoryRecord> records, double t);

enum class SweepAxis { kX, kMuDotR, kDelta, kGamma12, kOmega12 };

std::string_view to_string(SweepAxis axis);
/// Accepts x, mu_dot_r, delta, gamma12, omega12. Throws ValidationError.
SweepAxis parse_sweep_axis(std::string_view name);

/// Copy of `base` with one parameter replaced.
Scenario with_parameter(const Scenario& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  double first_max_c = 0.0;
  double t_first_max = 0.0;
  double c_at_5 = 0.0;  // NaN when Gamma t = 5 lies outside the grid
  std::string error;    // empty on success

  bool ok() const { return error.empty(); }
};

/// Runs one scenario per value. Rows are evaluated concurrently, returned in
/// input order, and a failing row records its error instead of aborting.
std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis, std::span<const double> values,
                            const RunOptions& options = {});

enum class Figure { kFig2, kFig3, kFig4, kFig5 };

std::string_view to_string(Figure f);
/// Accepts fig2, fig3, fig4, fig5. Throws ValidationError.
Figure parse_figure(std::string_view name);

/// Omega12 used for the detuned-pair figure. It is twice the value the
/// dipole-dipole formula gives at x = pi/6; see README for why.
inline constexpr double kDetunedFigureShift = 9.30;

/// Built-in scenario behind each figure.
Scenario figure_scenario(Figure f);

/// Figure curves; `points` overrides the default grid resolution.
Table figure_table(Figure f, std::optional<std::size_t> points = std::nullopt);

Table trajectory_table(std::span<const TrajectoryRecord> records, const OutputSet& outputs);
Table sweep_table(SweepAxis axis, std::span<const SweepRow> rows);

}  // namespace twoatom
