#pragma once

namespace twoatom {

/// Relative placement of two atoms with parallel transition dipoles.
///
/// `x` is the dimensionless separation k0 * r12 (so r12 = lambda / 12 gives
/// x = pi / 6). `mu_dot_r` is the cosine of the angle between the dipole
/// direction and the interatomic axis; 0 means perpendicular dipoles.
struct Geometry {
  double x = 0.0;
  double mu_dot_r = 0.0;
};

/// Single-atom decay rate together with the two collective couplings, all in
/// the same rate unit.
struct CouplingRates {
  double gamma = 1.0;
  double gamma12 = 0.0;
  double omega12 = 0.0;

  friend bool operator==(const CouplingRates&, const CouplingRates&) = default;
};

/// Separations below this are treated as the coincident-atom (Dicke) regime.
inline constexpr double kMinSeparation = 1e-6;

/// Throws DomainError unless x > 0 and |mu_dot_r| <= 1 (both finite).
void validate(const Geometry& g);

/// Collective damping Gamma12 / Gamma.
///
/// For x < kMinSeparation returns the analytic small-separation limit 1.
/// Throws DomainError for x <= 0 or |mu_dot_r| > 1.
double collective_damping(const Geometry& g);

/// Dipole-dipole shift Omega12 / Gamma.
///
/// Diverges like 1/x^3 as the atoms approach; throws DomainError for
/// x < kMinSeparation as well as for invalid geometries.
double dipole_dipole_shift(const Geometry& g);

/// Bundles `gamma` with Gamma12 and Omega12 scaled by it.
CouplingRates rates_from_geometry(const Geometry& g, double gamma = 1.0);

}  // namespace twoatom
