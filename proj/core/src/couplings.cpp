#include "twoatom/couplings.hpp"

#include <cmath>
#include <string>

#include "twoatom/errors.hpp"

namespace twoatom {
namespace {

// Below this separation cos(x)/x^2 - sin(x)/x^3 loses most of its digits to
// cancellation; use the Taylor series instead.
constexpr double kSeriesCutoff = 0.05;

// cos(x)/x^2 - sin(x)/x^3 = sum_k (-1)^k 2k x^(2k-2) / (2k+1)!
double near_field_damping_term(double x) {
  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    return -1.0 / 3.0 +
           x2 * (1.0 / 30.0 +
                 x2 * (-1.0 / 840.0 + x2 * (1.0 / 45360.0 - x2 / 3991680.0)));
  }
  return std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
}

double sinc(double x) {
  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return std::sin(x) / x;
}

}  // namespace

void validate(const Geometry& g) {
  if (!std::isfinite(g.x) || g.x <= 0.0) {
    throw DomainError("geometry: separation x = k0*r12 must be finite and > 0, got " +
                      std::to_string(g.x));
  }
  if (!std::isfinite(g.mu_dot_r) || std::abs(g.mu_dot_r) > 1.0) {
    throw DomainError("geometry: mu_dot_r must lie in [-1, 1], got " +
                      std::to_string(g.mu_dot_r));
  }
}

double collective_damping(const Geometry& g) {
  validate(g);
  if (g.x < kMinSeparation) return 1.0;
  const double m2 = g.mu_dot_r * g.mu_dot_r;
  return 1.5 * ((1.0 - m2) * sinc(g.x) + (1.0 - 3.0 * m2) * near_field_damping_term(g.x));
}

double dipole_dipole_shift(const Geometry& g) {
  validate(g);
  if (g.x < kMinSeparation) {
    throw DomainError("dipole_dipole_shift: separation x = " + std::to_string(g.x) +
                      " is below the near-field cutoff; the static shift diverges");
  }
  const double x = g.x;
  const double m2 = g.mu_dot_r * g.mu_dot_r;
  const double c = std::cos(x);
  const double s = std::sin(x);
  return 0.75 * (-(1.0 - m2) * c / x + (1.0 - 3.0 * m2) * (s / (x * x) + c / (x * x * x)));
}

CouplingRates rates_from_geometry(const Geometry& g, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw DomainError("rates_from_geometry: gamma must be > 0, got " + std::to_string(gamma));
  }
  return {gamma, gamma * collective_damping(g), gamma * dipole_dipole_shift(g)};
}

}  // namespace twoatom
