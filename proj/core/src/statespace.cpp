#include "twoatom/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace twoatom {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool block_positive(double a, double b, Complex c) {
  return a >= -tolerance::kPositivity && b >= -tolerance::kPositivity &&
         std::norm(c) <= a * b + tolerance::kPositivity;
}

}  // namespace

bool is_valid(const BlockState& b) {
  return std::abs(b.trace() - 1.0) <= tolerance::kTrace && block_positive(b.r11, b.r22, b.r12) &&
         block_positive(b.r33, b.r44, b.r34);
}

DensityMatrix4 DensityMatrix4::projector(const Vector4& psi) {
  const double norm2 = psi.squaredNorm();
  return DensityMatrix4(psi * psi.adjoint() / norm2);
}

Diagnostics validate(const DensityMatrix4& m) {
  const Matrix4& a = m.matrix();
  Diagnostics d;
  d.hermitian_residual = (a - a.adjoint()).cwiseAbs().maxCoeff();
  d.trace_residual = std::abs(a.trace() - Complex(1.0, 0.0));
  const Matrix4 h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.info() == Eigen::Success ? solver.eigenvalues().minCoeff()
                                                     : -std::numeric_limits<double>::infinity();
  return d;
}

bool is_block_form(const DensityMatrix4& m, double tol) {
  for (int upper : {kGG, kEE}) {
    for (int lower : {kGE, kEG}) {
      if (std::abs(m(upper, lower)) >= tol || std::abs(m(lower, upper)) >= tol) return false;
    }
  }
  return true;
}

const Matrix4& bell_transform() {
  static const Matrix4 u = [] {
    Matrix4 m;
    m << 1, 1, 0, 0,
        -1, 1, 0, 0,
         0, 0, 1, 1,
         0, 0, -1, 1;
    return Matrix4(m * kInvSqrt2);
  }();
  return u;
}

Vector4 bell_vector(int i) { return bell_transform().row(i).transpose(); }

// Element relations of U rho U^dagger written out for a block matrix. Row i
// of U is <i'|, so r12' = <1'|rho|2'> and r34' = <3'|rho|4'>.
BellState4 to_bell(const BlockState& b) {
  const Complex r21 = std::conj(b.r12);
  const Complex r43 = std::conj(b.r34);
  BellState4 p;
  p.r11 = 0.5 * (b.r11 + b.r22 + 2.0 * b.r12.real());
  p.r22 = 0.5 * (b.r11 + b.r22 - 2.0 * b.r12.real());
  p.r12 = -0.5 * (Complex(b.r11 - b.r22) - (b.r12 - r21));
  p.r33 = 0.5 * (b.r33 + b.r44 + 2.0 * b.r34.real());
  p.r44 = 0.5 * (b.r33 + b.r44 - 2.0 * b.r34.real());
  p.r34 = -0.5 * (Complex(b.r33 - b.r44) - (b.r34 - r43));
  return p;
}

// U is real orthogonal, so rho = U^T rho' U.
BlockState from_bell(const BellState4& p) {
  BlockState b;
  b.r11 = 0.5 * (p.r11 + p.r22) - p.r12.real();
  b.r22 = 0.5 * (p.r11 + p.r22) + p.r12.real();
  b.r12 = Complex(0.5 * (p.r11 - p.r22), p.r12.imag());
  b.r33 = 0.5 * (p.r33 + p.r44) - p.r34.real();
  b.r44 = 0.5 * (p.r33 + p.r44) + p.r34.real();
  b.r34 = Complex(0.5 * (p.r33 - p.r44), p.r34.imag());
  return b;
}

CollectiveState to_collective(const BlockState& b) {
  CollectiveState c;
  c.rgg = b.r11;
  c.ree = b.r22;
  c.reg = std::conj(b.r12);
  const double mean = 0.5 * (b.r33 + b.r44);
  c.rss = mean + b.r34.real();
  c.raa = mean - b.r34.real();
  c.ras = Complex(0.5 * (b.r44 - b.r33), b.r34.imag());
  return c;
}

BlockState from_collective(const CollectiveState& c) {
  BlockState b;
  b.r11 = c.rgg;
  b.r22 = c.ree;
  b.r12 = std::conj(c.reg);
  const double mean = 0.5 * (c.rss + c.raa);
  b.r33 = mean - c.ras.real();
  b.r44 = mean + c.ras.real();
  b.r34 = Complex(0.5 * (c.rss - c.raa), c.ras.imag());
  return b;
}

}  // namespace twoatom
