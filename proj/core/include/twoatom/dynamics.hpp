#pragma once

#include <cstddef>
#include <vector>

#include "twoatom/couplings.hpp"
#include "twoatom/statespace.hpp"

namespace twoatom {

/// Rates and frequencies of the atom pair, in units where gamma sets the
/// time scale. `delta` is half the transition-frequency difference;
/// `omega0` is the mean transition frequency (0 selects the rotating frame).
struct AtomPairParams {
  double gamma = 1.0;
  double gamma12 = 0.0;
  double omega12 = 0.0;
  double delta = 0.0;
  double omega0 = 0.0;

  static AtomPairParams from_rates(const CouplingRates& r, double delta = 0.0) {
    return {r.gamma, r.gamma12, r.omega12, delta, 0.0};
  }
};

/// Throws DomainError unless gamma > 0, |gamma12| <= gamma and all fields are finite.
void validate(const AtomPairParams& p);

/// Uniformly spaced sample times in units of 1/gamma, both ends included.
///
/// A degenerate grid with t_end == t_start yields the single time t_start.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t n_points = 2;

  std::vector<double> times() const;
};

void validate(const TimeGrid& g);

struct IntegratorSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  std::size_t max_steps_between_samples = 1'000'000;
};

/// |gamma -/+ gamma12| below this makes the closed-form populations singular.
inline constexpr double kDickeEpsilon = 1e-8;

/// True when the closed-form solution is usable for `c0` under `p`.
bool analytic_solution_applies(const CollectiveState& c0, const AtomPairParams& p);

/// Exact solution for identical atoms at absolute time t (state c0 at t = 0).
///
/// Throws DomainError if p.delta != 0 and DickeSingularityError when c0 has
/// doubly-excited population at the Dicke point.
CollectiveState evolve_analytic(const CollectiveState& c0, const AtomPairParams& p, double t);

/// Right-hand side of the collective-basis equations of motion.
CollectiveState collective_derivative(const CollectiveState& c, const AtomPairParams& p);

/// Integrates the collective-basis equations of motion. Valid for any delta
/// and at the Dicke point. Returns one state per grid time; c0 is taken at
/// t = 0 even when the grid starts later.
std::vector<CollectiveState> evolve_block_ode(const CollectiveState& c0, const AtomPairParams& p,
                                              const TimeGrid& grid,
                                              const IntegratorSettings& settings = {});

/// Product-basis Lindblad generator applied to rho.
Matrix4 master_equation_derivative(const Matrix4& rho, const AtomPairParams& p);

/// Integrates the full master equation for an arbitrary 4x4 initial state.
std::vector<DensityMatrix4> evolve_full_master(const DensityMatrix4& m0, const AtomPairParams& p,
                                               const TimeGrid& grid,
                                               const IntegratorSettings& settings = {});

/// Expectation of the squared total spin, 2 - 2 raa.
double total_spin_squared(const CollectiveState& c);

}  // namespace twoatom
