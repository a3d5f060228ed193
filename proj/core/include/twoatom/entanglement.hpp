#pragma once

#include "twoatom/dynamics.hpp"
#include "twoatom/statespace.hpp"

namespace twoatom {

/// The two concurrence candidates of a block state and their nonnegative
/// companions. At most one of c1, c2 is positive for a valid state.
struct ConcurrenceTerms {
  double c1 = 0.0;
  double c2 = 0.0;
  double c1_plus = 0.0;
  double c2_plus = 0.0;
};

struct EntanglementReport {
  double concurrence = 0.0;
  double negativity = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c1_plus = 0.0;
  double c2_plus = 0.0;

  // Ck * Ck+ for the branch that is positive (zero if neither is). Reported
  // for inspection only.
  double concurrence_product() const {
    if (c1 > 0.0) return c1 * c1_plus;
    if (c2 > 0.0) return c2 * c2_plus;
    return 0.0;
  }
};

ConcurrenceTerms concurrence_terms(const BlockState& b);

/// max(0, C1, C2).
double concurrence_block(const BlockState& b);

/// Closed-form negativity of a block state from its partial-transpose roots.
double negativity_block(const BlockState& b);

/// sqrt(ck * ck_plus + s^2) - s, the negativity branch belonging to Ck.
/// `s` is r33 + r44 for branch 1 and r11 + r22 for branch 2.
double negativity_from_concurrence(double ck, double ck_plus, double s);

/// Concurrence, negativity and all intermediate terms in one pass.
EntanglementReport analyze(const BlockState& b);

/// sigma_y (x) sigma_y rho^* sigma_y (x) sigma_y.
Matrix4 spin_flip(const Matrix4& rho);

/// Partial transpose with respect to atom 1.
Matrix4 partial_transpose_first(const Matrix4& rho);

/// Wootters concurrence of an arbitrary two-qubit state via the Hermitian
/// matrix sqrt(rho) rho~ sqrt(rho). Throws EigenSolverError on failure.
double wootters_generic(const DensityMatrix4& m);

/// -2 * (sum of negative eigenvalues of the partial transpose), floored at 0.
double negativity_generic(const DensityMatrix4& m);

/// Concurrence candidates evaluated directly from Bell-basis entries.
ConcurrenceTerms concurrence_bell_form(const BellState4& p);
double negativity_bell_form(const BellState4& p);

/// Closed-form time dependences for identical atoms (delta must be 0).
namespace closed_form {

/// Ground-state population when one atom starts excited.
double ground_population_single(const AtomPairParams& p, double t);

/// C2(t) for one atom initially excited.
double c2_single_excitation(const AtomPairParams& p, double t);

/// N2(t) for one atom initially excited.
double n2_single_excitation(const AtomPairParams& p, double t);

/// Ground-state population when both atoms start excited.
double ground_population_double(const AtomPairParams& p, double t);

/// C2(t) for both atoms initially excited; negative while unentangled.
/// Throws DickeSingularityError at |gamma -/+ gamma12| < kDickeEpsilon.
double c2_double_excitation(const AtomPairParams& p, double t);

}  // namespace closed_form

}  // namespace twoatom
