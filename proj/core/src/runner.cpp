#include "twoatom/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"

namespace twoatom {
namespace {

constexpr std::array<std::pair<SweepAxis, std::string_view>, 5> kAxisNames{{
    {SweepAxis::kX, "x"},
    {SweepAxis::kMuDotR, "mu_dot_r"},
    {SweepAxis::kDelta, "delta"},
    {SweepAxis::kGamma12, "gamma12"},
    {SweepAxis::kOmega12, "omega12"},
}};

constexpr std::array<std::pair<Figure, std::string_view>, 4> kFigureNames{{
    {Figure::kFig2, "fig2"},
    {Figure::kFig3, "fig3"},
    {Figure::kFig4, "fig4"},
    {Figure::kFig5, "fig5"},
}};

constexpr double kSummaryTime = 5.0;

template <class Error>
[[noreturn]] void rethrow_with_context(const Scenario& s, const Error& e) {
  throw Error("scenario '" + s.name + "': " + e.what());
}

std::vector<CollectiveState> evolve(const Scenario& s, const RunOptions& options) {
  const AtomPairParams params = s.params();
  const CollectiveState c0 = to_collective(s.initial.state());
  const bool analytic = options.path == EvolutionPath::kAnalytic ||
                        (options.path == EvolutionPath::kAuto && analytic_solution_applies(c0, params));
  if (!analytic) return evolve_block_ode(c0, params, s.grid, options.integrator);

  std::vector<CollectiveState> states;
  for (double t : s.grid.times()) states.push_back(evolve_analytic(c0, params, t));
  return states;
}

}  // namespace

TrajectoryRecord make_record(double t, const CollectiveState& c) {
  const EntanglementReport report = analyze(from_collective(c));
  TrajectoryRecord r;
  r.t = t;
  r.concurrence = report.concurrence;
  r.negativity = report.negativity;
  r.rho_ee = c.ree;
  r.rho_ss = c.rss;
  r.rho_aa = c.raa;
  r.rho_gg = c.rgg;
  r.re_rho_as = c.ras.real();
  r.im_rho_as = c.ras.imag();
  r.s_squared = total_spin_squared(c);
  return r;
}

std::vector<TrajectoryRecord> run_scenario(const Scenario& s, const RunOptions& options) {
  validate(s);
  std::vector<CollectiveState> states;
  try {
    states = evolve(s, options);
  } catch (const DickeSingularityError& e) {
    rethrow_with_context(s, e);
  } catch (const IntegrationError& e) {
    rethrow_with_context(s, e);
  }

  const std::vector<double> times = s.grid.times();
  std::vector<TrajectoryRecord> records;
  records.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) records.push_back(make_record(times[i], states[i]));
  return records;
}

Peak max_concurrence(std::span<const TrajectoryRecord> records) {
  Peak best{-std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& r : records) {
    if (r.concurrence > best.value) best = {r.concurrence, r.t};
  }
  return best;
}

Peak first_maximum(std::span<const TrajectoryRecord> records) {
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double c = records[i].concurrence;
    if (c > 0.0 && c >= records[i - 1].concurrence && c > records[i + 1].concurrence) {
      return {c, records[i].t};
    }
  }
  return max_concurrence(records);
}

double concurrence_at(std::span<const TrajectoryRecord> records, double t) {
  if (records.empty() || t < records.front().t || t > records.back().t) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const auto upper = std::lower_bound(records.begin(), records.end(), t,
                                      [](const TrajectoryRecord& r, double v) { return r.t < v; });
  if (upper->t == t || upper == records.begin()) return upper->concurrence;
  const auto lower = upper - 1;
  const double w = (t - lower->t) / (upper->t - lower->t);
  return (1.0 - w) * lower->concurrence + w * upper->concurrence;
}

std::string_view to_string(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (const auto& [a, n] : kAxisNames) {
    if (n == name) return a;
  }
  throw ValidationError("unknown sweep axis '" + std::string(name) +
                        "' (expected x, mu_dot_r, delta, gamma12 or omega12)");
}

Scenario with_parameter(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::kX:
      s.geometry = Geometry{value, base.geometry ? base.geometry->mu_dot_r : 0.0};
      break;
    case SweepAxis::kMuDotR:
      s.geometry = Geometry{base.geometry ? base.geometry->x : Scenario{}.geometry->x, value};
      break;
    case SweepAxis::kDelta:
      s.delta = value;
      break;
    case SweepAxis::kGamma12:
      s.gamma12_override = value;
      break;
    case SweepAxis::kOmega12:
      s.omega12_override = value;
      break;
  }
  return s;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis, std::span<const double> values,
                            const RunOptions& options) {
  std::vector<SweepRow> rows(values.size());
  auto evaluate = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = values[i];
    try {
      const auto records = run_scenario(with_parameter(base, axis, values[i]), options);
      const Peak peak = first_maximum(records);
      row.first_max_c = peak.value;
      row.t_first_max = peak.time;
      row.c_at_5 = concurrence_at(records, kSummaryTime);
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.first_max_c = row.t_first_max = row.c_at_5 = nan;
      row.error = e.what();
    }
  };

  // Each worker writes only to the rows it claims.
  const std::size_t workers =
      std::min<std::size_t>(values.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) evaluate(i);
      });
    }
  }
  return rows;
}

std::string_view to_string(Figure f) {
  for (const auto& [fig, name] : kFigureNames) {
    if (fig == f) return name;
  }
  return "unknown";
}

Figure parse_figure(std::string_view name) {
  for (const auto& [fig, n] : kFigureNames) {
    if (n == name) return fig;
  }
  throw ValidationError("unknown figure '" + std::string(name) + "' (expected fig2, fig3, fig4 or fig5)");
}

Scenario figure_scenario(Figure f) {
  Scenario s;  // r12 = lambda/12, perpendicular dipoles, Gamma t in [0, 3], 3000 points
  s.name = std::string(to_string(f));
  switch (f) {
    case Figure::kFig2:
    case Figure::kFig3:
      s.initial.kind = InitialKind::kAtom1Excited;
      break;
    case Figure::kFig4:
      s.initial.kind = InitialKind::kBothExcited;
      s.grid = {0.0, 10.0, 5000};
      break;
    case Figure::kFig5:
      s.initial.kind = InitialKind::kAtom1Excited;
      s.delta = 10.0;
      s.omega12_override = kDetunedFigureShift;
      break;
  }
  return s;
}

Table figure_table(Figure f, std::optional<std::size_t> points) {
  Scenario s = figure_scenario(f);
  if (points) s.grid.n_points = *points;
  const auto records = run_scenario(s);

  Table table;
  switch (f) {
    case Figure::kFig2:
    case Figure::kFig5:
      table.columns = {"t", "C", "aa_minus_ss", "aa_plus_ss"};
      for (const auto& r : records) {
        table.rows.push_back({r.t, r.concurrence, r.rho_aa - r.rho_ss, r.rho_aa + r.rho_ss});
      }
      break;
    case Figure::kFig3:
      table.columns = {"t", "C", "N"};
      for (const auto& r : records) table.rows.push_back({r.t, r.concurrence, r.negativity});
      break;
    case Figure::kFig4:
      table.columns = {"t", "C", "N", "rho_aa"};
      for (const auto& r : records) {
        table.rows.push_back({r.t, r.concurrence, r.negativity, r.rho_aa});
      }
      break;
  }
  return table;
}

Table trajectory_table(std::span<const TrajectoryRecord> records, const OutputSet& outputs) {
  Table table;
  table.columns.push_back("t");
  if (outputs.concurrence) table.columns.push_back("concurrence");
  if (outputs.negativity) table.columns.push_back("negativity");
  if (outputs.populations) {
    for (const char* c : {"rho_ee", "rho_ss", "rho_aa", "rho_gg"}) table.columns.push_back(c);
  }
  if (outputs.coherences) {
    table.columns.push_back("re_rho_as");
    table.columns.push_back("im_rho_as");
  }
  if (outputs.s_squared) table.columns.push_back("s_squared");

  for (const auto& r : records) {
    std::vector<Cell> row{r.t};
    if (outputs.concurrence) row.push_back(r.concurrence);
    if (outputs.negativity) row.push_back(r.negativity);
    if (outputs.populations) row.insert(row.end(), {r.rho_ee, r.rho_ss, r.rho_aa, r.rho_gg});
    if (outputs.coherences) row.insert(row.end(), {r.re_rho_as, r.im_rho_as});
    if (outputs.s_squared) row.push_back(r.s_squared);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table sweep_table(SweepAxis axis, std::span<const SweepRow> rows) {
  Table table;
  table.columns = {std::string(to_string(axis)), "first_max_c", "t_first_max", "c_at_5", "error"};
  for (const auto& r : rows) {
    table.rows.push_back({r.value, r.first_max_c, r.t_first_max, r.c_at_5, r.error});
  }
  return table;
}

}  // namespace twoatom
