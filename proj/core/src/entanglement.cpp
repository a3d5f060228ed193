#include "twoatom/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

#include "twoatom/errors.hpp"

namespace twoatom {
namespace {

// Arguments that are nonnegative analytically may come out as -1e-17.
double clamped_sqrt(double v) { return std::sqrt(std::max(0.0, v)); }

// sqrt(q + s^2) - s evaluated without cancellation for small q.
double negativity_branch(double q, double s) {
  const double root = clamped_sqrt(q + s * s);
  const double denom = root + s;
  return denom > 0.0 ? q / denom : 0.0;
}

// Real part of z^2; the Bell-form differences are purely real or imaginary.
double real_square(Complex z) { return (z * z).real(); }

const Matrix4& spin_flip_operator() {
  static const Matrix4 y = [] {
    Matrix4 m = Matrix4::Zero();
    m(kEE, kGG) = -1.0;
    m(kGG, kEE) = -1.0;
    m(kEG, kGE) = 1.0;
    m(kGE, kEG) = 1.0;
    return m;
  }();
  return y;
}

Eigen::Vector4d hermitian_eigenvalues(const Matrix4& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenSolverError(std::string(what) + ": eigensolver failed");
  return solver.eigenvalues();
}

void require_identical_atoms(const AtomPairParams& p, const char* what) {
  validate(p);
  if (p.delta != 0.0) throw DomainError(std::string(what) + ": requires identical atoms (delta = 0)");
}

}  // namespace

ConcurrenceTerms concurrence_terms(const BlockState& b) {
  const double upper = std::abs(b.r12);
  const double lower = std::abs(b.r34);
  const double lower_pop = clamped_sqrt(b.r33 * b.r44);
  const double upper_pop = clamped_sqrt(b.r11 * b.r22);
  return {2.0 * (upper - lower_pop), 2.0 * (lower - upper_pop), 2.0 * (upper + lower_pop),
          2.0 * (lower + upper_pop)};
}

double concurrence_block(const BlockState& b) {
  const ConcurrenceTerms t = concurrence_terms(b);
  return std::max({0.0, t.c1, t.c2});
}

double negativity_block(const BlockState& b) {
  const double n1 = negativity_branch(4.0 * (std::norm(b.r12) - b.r33 * b.r44), b.r33 + b.r44);
  const double n2 = negativity_branch(4.0 * (std::norm(b.r34) - b.r11 * b.r22), b.r11 + b.r22);
  return std::max({0.0, n1, n2});
}

double negativity_from_concurrence(double ck, double ck_plus, double s) {
  return clamped_sqrt(ck * ck_plus + s * s) - s;
}

EntanglementReport analyze(const BlockState& b) {
  const ConcurrenceTerms t = concurrence_terms(b);
  EntanglementReport r;
  r.c1 = t.c1;
  r.c2 = t.c2;
  r.c1_plus = t.c1_plus;
  r.c2_plus = t.c2_plus;
  r.concurrence = std::max({0.0, t.c1, t.c2});
  r.negativity = negativity_block(b);
  return r;
}

Matrix4 spin_flip(const Matrix4& rho) {
  const Matrix4& y = spin_flip_operator();
  return y * rho.conjugate() * y;
}

Matrix4 partial_transpose_first(const Matrix4& rho) {
  // (atom 1, atom 2) occupation for each product index; 0 = g, 1 = e.
  static constexpr std::array<std::array<int, 2>, 4> kAtoms{{{0, 0}, {1, 1}, {0, 1}, {1, 0}}};
  auto index = [](int a1, int a2) {
    for (int k = 0; k < 4; ++k) {
      if (kAtoms[k][0] == a1 && kAtoms[k][1] == a2) return k;
    }
    return -1;
  };
  Matrix4 out;
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      const auto [a1, a2] = kAtoms[row];
      const auto [b1, b2] = kAtoms[col];
      out(row, col) = rho(index(b1, a2), index(a1, b2));
    }
  }
  return out;
}

double wootters_generic(const DensityMatrix4& m) {
  const Matrix4 rho = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(rho);
  if (solver.info() != Eigen::Success) throw EigenSolverError("wootters_generic: eigensolver failed");
  const Eigen::Vector4d roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4 sqrt_rho = solver.eigenvectors() * roots.cast<Complex>().asDiagonal() *
                           solver.eigenvectors().adjoint();
  const Matrix4 r = sqrt_rho * spin_flip(rho) * sqrt_rho;

  Eigen::Vector4d lambda = hermitian_eigenvalues(r, "wootters_generic");
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = clamped_sqrt(lambda[i]);
  std::sort(s.begin(), s.end(), std::greater<>());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double negativity_generic(const DensityMatrix4& m) {
  const Eigen::Vector4d mu =
      hermitian_eigenvalues(partial_transpose_first(m.matrix()), "negativity_generic");
  double negative_sum = 0.0;
  for (int i = 0; i < 4; ++i) negative_sum += std::min(0.0, mu[i]);
  return std::max(0.0, -2.0 * negative_sum);
}

ConcurrenceTerms concurrence_bell_form(const BellState4& p) {
  const Complex p21 = std::conj(p.r12);
  const Complex p43 = std::conj(p.r34);
  const double upper_diff =
      clamped_sqrt((p.r11 - p.r22) * (p.r11 - p.r22) - real_square(p.r12 - p21));
  const double upper_sum =
      clamped_sqrt((p.r11 + p.r22) * (p.r11 + p.r22) - real_square(p.r12 + p21));
  const double lower_diff =
      clamped_sqrt((p.r33 - p.r44) * (p.r33 - p.r44) - real_square(p.r34 - p43));
  const double lower_sum =
      clamped_sqrt((p.r33 + p.r44) * (p.r33 + p.r44) - real_square(p.r34 + p43));
  return {upper_diff - lower_sum, lower_diff - upper_sum, upper_diff + lower_sum,
          lower_diff + upper_sum};
}

double negativity_bell_form(const BellState4& p) {
  const ConcurrenceTerms t = concurrence_bell_form(p);
  const double n1 = negativity_branch(t.c1 * t.c1_plus, p.r33 + p.r44);
  const double n2 = negativity_branch(t.c2 * t.c2_plus, p.r11 + p.r22);
  return std::max({0.0, n1, n2});
}

namespace closed_form {

double ground_population_single(const AtomPairParams& p, double t) {
  require_identical_atoms(p, "ground_population_single");
  return 1.0 - 0.5 * (std::exp(-(p.gamma + p.gamma12) * t) + std::exp(-(p.gamma - p.gamma12) * t));
}

double c2_single_excitation(const AtomPairParams& p, double t) {
  require_identical_atoms(p, "c2_single_excitation");
  const double diff = std::exp(-(p.gamma + p.gamma12) * t) - std::exp(-(p.gamma - p.gamma12) * t);
  const double osc = std::sin(2.0 * p.omega12 * t);
  return std::sqrt(0.25 * diff * diff + std::exp(-2.0 * p.gamma * t) * osc * osc);
}

double n2_single_excitation(const AtomPairParams& p, double t) {
  // With no doubly excited population C2+ coincides with C2.
  const double c2 = c2_single_excitation(p, t);
  return negativity_from_concurrence(c2, c2, ground_population_single(p, t));
}

namespace {

struct DoubleExcitationPopulations {
  double ss;
  double aa;
  double ee;
};

DoubleExcitationPopulations double_excitation(const AtomPairParams& p, double t) {
  require_identical_atoms(p, "double excitation closed form");
  const double g = p.gamma;
  const double g12 = p.gamma12;
  if (std::abs(g - g12) < kDickeEpsilon || std::abs(g + g12) < kDickeEpsilon) {
    throw DickeSingularityError("double excitation closed form: singular at |gamma -/+ gamma12| = 0");
  }
  const double ee = std::exp(-2.0 * g * t);
  return {(g + g12) / (g - g12) * ee * std::expm1((g - g12) * t),
          (g - g12) / (g + g12) * ee * std::expm1((g + g12) * t), ee};
}

}  // namespace

double ground_population_double(const AtomPairParams& p, double t) {
  const auto pops = double_excitation(p, t);
  return 1.0 - (pops.ss + pops.aa + pops.ee);
}

double c2_double_excitation(const AtomPairParams& p, double t) {
  const auto pops = double_excitation(p, t);
  const double gg = 1.0 - (pops.ss + pops.aa + pops.ee);
  return std::abs(pops.ss - pops.aa) - 2.0 * std::exp(-p.gamma * t) * clamped_sqrt(gg);
}

}  // namespace closed_form

}  // namespace twoatom
