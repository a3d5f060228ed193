#include "twoatom/dynamics.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "twoatom/errors.hpp"

namespace twoatom {
namespace odeint = boost::numeric::odeint;

namespace {

using CollectiveVector = std::array<double, 7>;  // ree, rss, raa, reg (re, im), ras (re, im)
using MatrixVector = std::array<double, 32>;     // column-major complex 4x4

CollectiveVector pack(const CollectiveState& c) {
  return {c.ree, c.rss, c.raa, c.reg.real(), c.reg.imag(), c.ras.real(), c.ras.imag()};
}

CollectiveState unpack(const CollectiveVector& v) {
  CollectiveState c;
  c.ree = v[0];
  c.rss = v[1];
  c.raa = v[2];
  c.rgg = 1.0 - v[0] - v[1] - v[2];
  c.reg = {v[3], v[4]};
  c.ras = {v[5], v[6]};
  return c;
}

MatrixVector pack(const Matrix4& m) {
  MatrixVector v{};
  Eigen::Map<Matrix4>(reinterpret_cast<Complex*>(v.data())) = m;
  return v;
}

Matrix4 unpack(const MatrixVector& v) {
  return Eigen::Map<const Matrix4>(reinterpret_cast<const Complex*>(v.data()));
}

// Sample times with t = 0 prepended when the grid starts later, so that the
// initial state always sits at the origin.
struct Schedule {
  std::vector<double> times;
  bool skip_first = false;
};

Schedule make_schedule(const TimeGrid& grid) {
  Schedule s{grid.times(), false};
  if (s.times.front() > 0.0) {
    s.times.insert(s.times.begin(), 0.0);
    s.skip_first = true;
  }
  return s;
}

template <class State, class System, class Convert>
auto integrate_on(const State& x0, System&& system, const TimeGrid& grid,
                  const IntegratorSettings& settings, Convert&& convert) {
  const Schedule schedule = make_schedule(grid);
  std::vector<decltype(convert(x0))> out;
  out.reserve(schedule.times.size());
  State x = x0;
  auto observer = [&](const State& state, double) { out.push_back(convert(state)); };

  if (schedule.times.size() == 1) {
    observer(x, schedule.times.front());
  } else {
    auto stepper = odeint::make_controlled(settings.abs_tol, settings.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    try {
      odeint::integrate_times(stepper, system, x, schedule.times.begin(), schedule.times.end(),
                              settings.initial_step, observer,
                              odeint::max_step_checker(settings.max_steps_between_samples));
    } catch (const odeint::odeint_error& e) {
      throw IntegrationError(std::string("adaptive integrator failed: ") + e.what());
    }
  }
  if (schedule.skip_first) out.erase(out.begin());
  return out;
}

struct CollectiveSystem {
  AtomPairParams p;
  void operator()(const CollectiveVector& x, CollectiveVector& dxdt, double) const {
    dxdt = pack(collective_derivative(unpack(x), p));
  }
};

// Atomic operators in the product basis |gg>, |ee>, |ge>, |eg>.
struct AtomOperators {
  std::array<Matrix4, 2> lower;  // S^-_1, S^-_2
  std::array<Matrix4, 2> sz;     // S^z_1, S^z_2

  AtomOperators() {
    lower[0] = lower[1] = sz[0] = sz[1] = Matrix4::Zero();
    lower[0](kGE, kEE) = 1.0;  // atom 1: |ee> -> |ge>
    lower[0](kGG, kEG) = 1.0;  //         |eg> -> |gg>
    lower[1](kEG, kEE) = 1.0;  // atom 2: |ee> -> |eg>
    lower[1](kGG, kGE) = 1.0;  //         |ge> -> |gg>
    sz[0].diagonal() << -0.5, 0.5, -0.5, 0.5;
    sz[1].diagonal() << -0.5, 0.5, 0.5, -0.5;
  }
};

const AtomOperators& atom_operators() {
  static const AtomOperators ops;
  return ops;
}

// Precomputed pieces of the generator: drho = -i (H_eff rho - rho H_eff^dag)
// + sum_ij Gamma_ij S^-_j rho S^+_i.
struct MasterGenerator {
  Matrix4 h_eff;
  std::array<std::array<double, 2>, 2> rates{};

  explicit MasterGenerator(const AtomPairParams& p) {
    const auto& ops = atom_operators();
    // Atom 1 sits at omega0 + delta and atom 2 at omega0 - delta; with the
    // collective coordinates of statespace.hpp this reproduces the +i*delta
    // couplings of the collective equations of motion.
    const double w1 = p.omega0 + p.delta;
    const double w2 = p.omega0 - p.delta;
    rates = {{{p.gamma, p.gamma12}, {p.gamma12, p.gamma}}};

    Matrix4 h = w1 * ops.sz[0] + w2 * ops.sz[1];
    h += p.omega12 * (ops.lower[0].adjoint() * ops.lower[1] + ops.lower[1].adjoint() * ops.lower[0]);

    Matrix4 k = Matrix4::Zero();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) k += rates[i][j] * ops.lower[i].adjoint() * ops.lower[j];
    }
    h_eff = h - Complex(0.0, 0.5) * k;
  }

  Matrix4 operator()(const Matrix4& rho) const {
    const auto& ops = atom_operators();
    const Complex minus_i(0.0, -1.0);
    Matrix4 d = minus_i * (h_eff * rho - rho * h_eff.adjoint());
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        d += rates[i][j] * ops.lower[j] * rho * ops.lower[i].adjoint();
      }
    }
    return d;
  }
};

struct MasterSystem {
  MasterGenerator generator;
  void operator()(const MatrixVector& x, MatrixVector& dxdt, double) const {
    dxdt = pack(generator(unpack(x)));
  }
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("atom pair: ") + what + " must be finite");
}

}  // namespace

void validate(const AtomPairParams& p) {
  require_finite(p.gamma, "gamma");
  require_finite(p.gamma12, "gamma12");
  require_finite(p.omega12, "omega12");
  require_finite(p.delta, "delta");
  require_finite(p.omega0, "omega0");
  if (p.gamma <= 0.0) throw DomainError("atom pair: gamma must be > 0");
  if (std::abs(p.gamma12) > p.gamma) {
    throw DomainError("atom pair: |gamma12| must not exceed gamma, got gamma12 = " +
                      std::to_string(p.gamma12));
  }
}

std::vector<double> TimeGrid::times() const {
  if (t_end == t_start) return {t_start};
  std::vector<double> t(n_points);
  const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) t[i] = t_start + step * static_cast<double>(i);
  t.back() = t_end;
  return t;
}

void validate(const TimeGrid& g) {
  if (!std::isfinite(g.t_start) || !std::isfinite(g.t_end)) {
    throw DomainError("time grid: bounds must be finite");
  }
  if (g.t_start < 0.0) throw DomainError("time grid: t_start must be >= 0");
  if (g.t_end < g.t_start) throw DomainError("time grid: t_end must be >= t_start");
  if (g.t_end > g.t_start && g.n_points < 2) {
    throw DomainError("time grid: at least two points are needed for a non-empty interval");
  }
  if (g.n_points < 1) throw DomainError("time grid: n_points must be >= 1");
}

bool analytic_solution_applies(const CollectiveState& c0, const AtomPairParams& p) {
  if (p.delta != 0.0) return false;
  if (c0.ree == 0.0) return true;
  return std::abs(p.gamma - p.gamma12) >= kDickeEpsilon &&
         std::abs(p.gamma + p.gamma12) >= kDickeEpsilon;
}

CollectiveState evolve_analytic(const CollectiveState& c0, const AtomPairParams& p, double t) {
  validate(p);
  if (p.delta != 0.0) {
    throw DomainError("evolve_analytic: closed form holds for identical atoms only (delta = 0)");
  }
  if (!analytic_solution_applies(c0, p)) {
    throw DickeSingularityError(
        "evolve_analytic: doubly excited population at the Dicke point "
        "(|gamma -/+ gamma12| < 1e-8); integrate the equations of motion instead");
  }
  const double g = p.gamma;
  const double g12 = p.gamma12;
  const double fast = std::exp(-(g + g12) * t);
  const double slow = std::exp(-(g - g12) * t);
  const double two_photon = std::exp(-2.0 * g * t);

  CollectiveState c;
  c.ree = c0.ree * two_photon;
  c.reg = c0.reg * std::exp(Complex(-g * t, -2.0 * p.omega0 * t));
  c.rss = c0.rss * fast;
  c.raa = c0.raa * slow;
  if (c0.ree != 0.0) {
    // e^{-(g+g12)t} - e^{-2gt} = e^{-2gt} expm1((g-g12)t), and mirror for aa.
    c.rss += c0.ree * (g + g12) / (g - g12) * two_photon * std::expm1((g - g12) * t);
    c.raa += c0.ree * (g - g12) / (g + g12) * two_photon * std::expm1((g + g12) * t);
  }
  c.ras = c0.ras * std::exp(Complex(-g * t, -2.0 * p.omega12 * t));
  c.rgg = 1.0 - c.ree - c.rss - c.raa;
  return c;
}

CollectiveState collective_derivative(const CollectiveState& c, const AtomPairParams& p) {
  const Complex i(0.0, 1.0);
  const Complex coupling = i * p.delta * (c.ras - c.rsa());
  CollectiveState d;
  d.ree = -2.0 * p.gamma * c.ree;
  d.reg = -(p.gamma + 2.0 * i * p.omega0) * c.reg;
  d.rss = -(p.gamma + p.gamma12) * (c.rss - c.ree) + coupling.real();
  d.raa = -(p.gamma - p.gamma12) * (c.raa - c.ree) - coupling.real();
  d.ras = -(p.gamma + 2.0 * i * p.omega12) * c.ras + i * p.delta * (c.rss - c.raa);
  d.rgg = -(d.ree + d.rss + d.raa);
  return d;
}

std::vector<CollectiveState> evolve_block_ode(const CollectiveState& c0, const AtomPairParams& p,
                                              const TimeGrid& grid,
                                              const IntegratorSettings& settings) {
  validate(p);
  validate(grid);
  return integrate_on(pack(c0), CollectiveSystem{p}, grid, settings,
                      [](const CollectiveVector& v) { return unpack(v); });
}

Matrix4 master_equation_derivative(const Matrix4& rho, const AtomPairParams& p) {
  return MasterGenerator(p)(rho);
}

std::vector<DensityMatrix4> evolve_full_master(const DensityMatrix4& m0, const AtomPairParams& p,
                                               const TimeGrid& grid,
                                               const IntegratorSettings& settings) {
  validate(p);
  validate(grid);
  return integrate_on(pack(m0.matrix()), MasterSystem{MasterGenerator(p)}, grid, settings,
                      [](const MatrixVector& v) { return DensityMatrix4(unpack(v)); });
}

double total_spin_squared(const CollectiveState& c) { return 2.0 - 2.0 * c.raa; }

}  // namespace twoatom
