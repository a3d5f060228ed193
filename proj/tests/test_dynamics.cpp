#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "oracles.hpp"
#include "random_states.hpp"
#include "twoatom/couplings.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"

using namespace twoatom;
using namespace twoatom::testing;

namespace {

CollectiveState atom1_excited() {
  BlockState b;
  b.r44 = 1.0;
  return to_collective(b);
}

CollectiveState both_excited() {
  CollectiveState c;
  c.rgg = 0.0;
  c.ree = 1.0;
  return c;
}

CollectiveState antisymmetric() {
  CollectiveState c;
  c.rgg = 0.0;
  c.raa = 1.0;
  return c;
}

AtomPairParams twelfth_wavelength(double delta = 0.0) {
  return AtomPairParams::from_rates(rates_from_geometry({std::numbers::pi / 6.0, 0.0}), delta);
}

double distance(const CollectiveState& a, const CollectiveState& b) {
  return std::max({std::abs(a.ree - b.ree), std::abs(a.rss - b.rss), std::abs(a.raa - b.raa),
                   std::abs(a.rgg - b.rgg), std::abs(a.reg - b.reg), std::abs(a.ras - b.ras)});
}

CollectiveState collective_of(const DensityMatrix4& m) { return to_collective(m.block()); }

double min_eigenvalue(const Matrix4& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix4>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("closed-form examples") {
    const AtomPairParams p{1.0, 0.95, 4.65, 0.0, 0.0};
    CHECK(evolve_analytic(antisymmetric(), p, 1.0).raa == doctest::Approx(std::exp(-0.05)).epsilon(1e-12));
    CHECK(std::abs(evolve_analytic(antisymmetric(), p, 1.0).raa - 0.9512) < 1e-4);

    const double rss = evolve_analytic(both_excited(), p, 3.0).rss;
    CHECK(rss == doctest::Approx(39.0 * (std::exp(-5.85) - std::exp(-6.0))).epsilon(1e-12));
    CHECK(std::abs(rss - 0.015644) < 1e-5);

    Rng rng(21);
    for (int k = 0; k < 20; ++k) {
      const auto c0 = to_collective(random_block_state(rng));
      CHECK(distance(evolve_analytic(c0, p, 0.0), c0) < 1e-15);
    }
  }

  TEST_CASE("closed form keeps unit trace") {
    Rng rng(22);
    const auto p = twelfth_wavelength();
    for (int k = 0; k < 50; ++k) {
      const auto c0 = to_collective(random_block_state(rng));
      for (double t : {0.1, 1.0, 4.0, 10.0}) CHECK(std::abs(evolve_analytic(c0, p, t).trace() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("closed form refuses detuned or Dicke-singular input") {
    CHECK_THROWS_AS(evolve_analytic(atom1_excited(), twelfth_wavelength(10.0), 1.0), DomainError);
    const AtomPairParams dicke{1.0, 1.0, 3.0, 0.0, 0.0};
    CHECK_THROWS_AS(evolve_analytic(both_excited(), dicke, 1.0), DickeSingularityError);
    const AtomPairParams near_dicke{1.0, 1.0 - 1e-9, 3.0, 0.0, 0.0};
    CHECK_THROWS_AS(evolve_analytic(both_excited(), near_dicke, 1.0), DickeSingularityError);
    CHECK_FALSE(analytic_solution_applies(both_excited(), dicke));
    // Without double excitation the prefactor never enters.
    CHECK(analytic_solution_applies(atom1_excited(), dicke));
    CHECK_NOTHROW(evolve_analytic(atom1_excited(), dicke, 1.0));
  }

  TEST_CASE("parameter and grid validation") {
    CHECK_THROWS_AS(validate(AtomPairParams{1.0, 1.2, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate(AtomPairParams{0.0, 0.0, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate(AtomPairParams{1.0, 0.5, std::nan(""), 0.0, 0.0}), DomainError);
    CHECK_NOTHROW(validate(AtomPairParams{2.0, -2.0, 1.0, 3.0, 0.0}));
    CHECK_THROWS(validate(TimeGrid{-1.0, 1.0, 10}));
    CHECK_THROWS(validate(TimeGrid{2.0, 1.0, 10}));
    CHECK_THROWS(validate(TimeGrid{0.0, 1.0, 1}));
    CHECK_NOTHROW(validate(TimeGrid{0.0, 0.0, 1}));
    const auto times = TimeGrid{0.0, 3.0, 3001}.times();
    REQUIRE(times.size() == 3001);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 3.0);
    CHECK(times[1000] == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("total spin squared") {
    CollectiveState c;
    c.raa = 1.0;
    c.rgg = 0.0;
    CHECK(total_spin_squared(c) == 0.0);
    c.raa = 0.0;
    c.rgg = 1.0;
    CHECK(total_spin_squared(c) == 2.0);
    c.raa = 0.5;
    c.rgg = 0.5;
    CHECK(total_spin_squared(c) == 1.0);

    // Against (S1 + S2)^2 built from single-atom spin operators.
    const Matrix4 s2 = PairOperators().total_spin_squared();
    Rng rng(23);
    for (int k = 0; k < 100; ++k) {
      const auto b = random_block_state(rng);
      CHECK(std::abs(total_spin_squared(to_collective(b)) - expectation(s2, b.to_matrix())) < 1e-13);
    }
  }

  TEST_CASE("master equation reduces to the collective equations of motion") {
    Rng rng(24);
    for (const AtomPairParams& p : {AtomPairParams{1.0, 0.6, 2.2, 1.7, 3.0}, AtomPairParams{1.0, 0.95, 4.65, -10.0, 0.0},
                                    AtomPairParams{1.0, -0.3, -1.1, 0.4, 100.0}}) {
      for (int k = 0; k < 100; ++k) {
        const auto b = random_block_state(rng);
        const Matrix4 d = master_equation_derivative(b.to_matrix(), p);
        REQUIRE(is_block_form(DensityMatrix4(d), 1e-13));
        const auto mapped = to_collective(BlockState::from_matrix(d));
        const auto direct = collective_derivative(to_collective(b), p);
        CHECK(distance(mapped, direct) < 1e-12);
      }
    }
  }

  TEST_CASE("master generator is trace free and Hermiticity preserving") {
    Rng rng(25);
    const AtomPairParams p{1.0, 0.4, 1.3, 2.0, 5.0};
    for (int k = 0; k < 100; ++k) {
      const Matrix4 d = master_equation_derivative(random_density_matrix(rng).matrix(), p);
      CHECK(std::abs(d.trace()) < 1e-13);
      CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("collective ODE agrees with the closed form") {
    const auto p = twelfth_wavelength();
    const TimeGrid grid{0.0, 10.0, 1001};
    const auto times = grid.times();
    for (const auto& c0 : {antisymmetric(), atom1_excited(), both_excited()}) {
      const auto numeric = evolve_block_ode(c0, p, grid);
      REQUIRE(numeric.size() == times.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, distance(numeric[i], evolve_analytic(c0, p, times[i])));
      }
      CHECK(worst < 1e-8);
    }
  }

  TEST_CASE("collective ODE grids") {
    const auto p = twelfth_wavelength();
    const auto single = evolve_block_ode(atom1_excited(), p, {0.0, 0.0, 1});
    REQUIRE(single.size() == 1);
    CHECK(distance(single[0], atom1_excited()) == 0.0);

    // The initial state is taken at t = 0 even when sampling starts later.
    const auto late = evolve_block_ode(atom1_excited(), p, {1.0, 2.0, 3});
    REQUIRE(late.size() == 3);
    CHECK(distance(late[0], evolve_analytic(atom1_excited(), p, 1.0)) < 1e-9);
    CHECK(distance(late[2], evolve_analytic(atom1_excited(), p, 2.0)) < 1e-9);
  }

  TEST_CASE("integration failure is reported") {
    const AtomPairParams p{1.0, 0.5, 1e5, 1.0, 0.0};
    IntegratorSettings tight;
    tight.max_steps_between_samples = 50;
    CHECK_THROWS_AS(evolve_block_ode(atom1_excited(), p, {0.0, 1.0, 2}, tight), IntegrationError);
    CHECK_THROWS_AS(evolve_full_master(DensityMatrix4::from_block(from_collective(atom1_excited())), p,
                                       {0.0, 1.0, 2}, tight),
                    IntegrationError);
  }

  TEST_CASE("detuning transfers population between |s> and |a>") {
    const AtomPairParams p{1.0, 0.95, 4.65, 10.0, 0.0};
    const TimeGrid grid{0.0, 3.0, 3001};
    const auto traj = evolve_block_ode(atom1_excited(), p, grid);
    const double dt = 3.0 / 3000.0;

    // Without the coupling each population would simply relax. What is left
    // over is the exchange term, which must enter the two with opposite sign.
    double sum_ss = 0.0, sum_aa = 0.0, sum_cross = 0.0;
    int opposite = 0, counted = 0;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
      const double dss = (traj[i + 1].rss - traj[i - 1].rss) / (2 * dt);
      const double daa = (traj[i + 1].raa - traj[i - 1].raa) / (2 * dt);
      const double rs = dss + (p.gamma + p.gamma12) * (traj[i].rss - traj[i].ree);
      const double ra = daa + (p.gamma - p.gamma12) * (traj[i].raa - traj[i].ree);
      sum_ss += rs * rs;
      sum_aa += ra * ra;
      sum_cross += rs * ra;
      if (std::abs(rs) > 1e-3) {
        ++counted;
        if (rs * ra < 0) ++opposite;
      }
    }
    CHECK(sum_cross / std::sqrt(sum_ss * sum_aa) < -0.999);
    CHECK(opposite == counted);

    // The difference rss - raa oscillates; with delta = 0 it has a single minimum.
    auto extrema = [](const std::vector<CollectiveState>& xs) {
      int n = 0;
      for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double a = xs[i - 1].rss - xs[i - 1].raa;
        const double b = xs[i].rss - xs[i].raa;
        const double c = xs[i + 1].rss - xs[i + 1].raa;
        if ((b - a) * (c - b) < 0) ++n;
      }
      return n;
    };
    CHECK(extrema(traj) >= 6);
    CHECK(extrema(evolve_block_ode(atom1_excited(), twelfth_wavelength(), grid)) == 1);
  }

  TEST_CASE("full master equation: block form is preserved") {
    const auto p = twelfth_wavelength();
    Rng rng(26);
    const TimeGrid grid{0.0, 10.0, 201};
    for (int k = 0; k < 5; ++k) {
      const auto traj = evolve_full_master(DensityMatrix4::from_block(random_block_state(rng)), p, grid);
      for (const auto& m : traj) REQUIRE(is_block_form(m, 1e-9));
    }
  }

  TEST_CASE("full master equation: vacuum is dark") {
    Matrix4 g = Matrix4::Zero();
    g(kGG, kGG) = 1.0;
    const auto traj = evolve_full_master(DensityMatrix4(g), twelfth_wavelength(10.0), {0.0, 20.0, 11});
    for (const auto& m : traj) CHECK((m.matrix() - g).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("three evolution paths agree") {
    const TimeGrid grid{0.0, 10.0, 501};
    const auto times = grid.times();
    const auto p = twelfth_wavelength();
    Rng rng(27);
    std::vector<CollectiveState> starts = {atom1_excited(), both_excited(), antisymmetric(),
                                           to_collective(random_block_state(rng))};
    for (const auto& c0 : starts) {
      const auto ode = evolve_block_ode(c0, p, grid);
      const auto full = evolve_full_master(DensityMatrix4::from_block(from_collective(c0)), p, grid);
      double worst = 0.0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        const auto exact = evolve_analytic(c0, p, times[i]);
        worst = std::max({worst, distance(ode[i], exact), distance(collective_of(full[i]), exact)});
      }
      CHECK(worst < 1e-7);
    }

    // With detuning only the two integrators remain.
    const auto pd = twelfth_wavelength(10.0);
    const auto ode = evolve_block_ode(atom1_excited(), pd, {0.0, 3.0, 301});
    const auto full = evolve_full_master(DensityMatrix4::from_block(from_collective(atom1_excited())), pd,
                                         {0.0, 3.0, 301});
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.size(); ++i) worst = std::max(worst, distance(ode[i], collective_of(full[i])));
    CHECK(worst < 1e-7);
  }

  TEST_CASE("full master equation keeps arbitrary states physical") {
    Rng rng(28);
    const AtomPairParams p{1.0, 0.7, 2.5, 3.0, 4.0};
    for (int k = 0; k < 5; ++k) {
      const auto m0 = random_density_matrix(rng);
      for (const auto& m : evolve_full_master(m0, p, {0.0, 8.0, 161})) {
        const Matrix4& r = m.matrix();
        CHECK(std::abs(r.trace() - 1.0) < 1e-9);
        CHECK(min_eigenvalue(0.5 * (r + r.adjoint())) >= -1e-8);
      }
    }
  }

  TEST_CASE("trace is preserved on every path") {
    const TimeGrid grid{0.0, 10.0, 101};
    const auto p = twelfth_wavelength(10.0);
    for (const auto& c : evolve_block_ode(atom1_excited(), p, grid)) CHECK(std::abs(c.trace() - 1.0) < 1e-9);
    for (const auto& c : evolve_block_ode(both_excited(), p, grid)) CHECK(std::abs(c.trace() - 1.0) < 1e-9);
  }

  TEST_CASE("symmetric state decays faster than antisymmetric") {
    const auto p = twelfth_wavelength();
    for (double t = 0.01; t <= 10.0; t += 0.01) {
      const auto c = evolve_analytic(atom1_excited(), p, t);
      REQUIRE(c.rss <= c.raa);
    }
  }

  TEST_CASE("total spin under the Dicke model and below it") {
    const AtomPairParams dicke{1.0, 1.0, 2.0, 0.0, 0.0};
    const TimeGrid grid{0.0, 10.0, 201};
    CollectiveState c0 = both_excited();
    c0.ree = 0.5;
    c0.rss = 0.3;
    c0.rgg = 0.2;
    c0.reg = Complex(0.1, 0.2);
    for (const auto& start : {both_excited(), c0}) {
      for (const auto& c : evolve_block_ode(start, dicke, grid)) CHECK(std::abs(total_spin_squared(c) - 2.0) < 1e-9);
    }

    const auto traj = evolve_block_ode(atom1_excited(), twelfth_wavelength(), grid);
    for (std::size_t i = 1; i < traj.size(); ++i) REQUIRE(total_spin_squared(traj[i]) > total_spin_squared(traj[i - 1]));
    CHECK(total_spin_squared(traj.back()) < 2.0);
  }

  TEST_CASE("mean frequency only rotates the two-photon coherence") {
    Rng rng(29);
    const auto b0 = random_block_state(rng);
    auto rotating = twelfth_wavelength(2.0);
    auto lab = rotating;
    lab.omega0 = 100.0;
    const TimeGrid grid{0.0, 2.0, 41};
    const auto a = evolve_full_master(DensityMatrix4::from_block(b0), rotating, grid);
    const auto b = evolve_full_master(DensityMatrix4::from_block(b0), lab, grid);
    const auto times = grid.times();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ca = collective_of(a[i]);
      const auto cb = collective_of(b[i]);
      CHECK(std::abs(ca.rss - cb.rss) < 1e-8);
      CHECK(std::abs(ca.raa - cb.raa) < 1e-8);
      CHECK(std::abs(ca.ree - cb.ree) < 1e-8);
      CHECK(std::abs(ca.ras - cb.ras) < 1e-8);
      CHECK(std::abs(std::abs(ca.reg) - std::abs(cb.reg)) < 1e-8);
      CHECK(std::abs(ca.reg * std::exp(Complex(0.0, -200.0 * times[i])) - cb.reg) < 1e-7);
      CHECK(std::abs(concurrence_block(a[i].block()) - concurrence_block(b[i].block())) < 1e-8);
      CHECK(std::abs(negativity_block(a[i].block()) - negativity_block(b[i].block())) < 1e-8);
    }

    auto closed = twelfth_wavelength();
    auto closed_lab = closed;
    closed_lab.omega0 = 100.0;
    const auto c0 = to_collective(b0);
    for (double t : {0.5, 1.5}) {
      const auto x = evolve_analytic(c0, closed, t);
      const auto y = evolve_analytic(c0, closed_lab, t);
      CHECK(std::abs(std::abs(x.reg) - std::abs(y.reg)) < 1e-14);
      CHECK(concurrence_block(from_collective(x)) == doctest::Approx(concurrence_block(from_collective(y))).epsilon(1e-12));
    }
  }
}
