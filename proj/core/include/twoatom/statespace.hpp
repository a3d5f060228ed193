#pragma once

#include <complex>

#include <Eigen/Core>

namespace twoatom {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;
using Vector4 = Eigen::Matrix<Complex, 4, 1>;

namespace tolerance {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPositivity = 1e-9;
}  // namespace tolerance

/// Product basis of the atom pair, atom 1 written first:
/// |1> = |g g>, |2> = |e e>, |3> = |g e>, |4> = |e g>.
enum ProductIndex : int { kGG = 0, kEE = 1, kGE = 2, kEG = 3 };

struct ProductBasisTag {};
struct BellBasisTag {};

/// The six independent entries of an X-shaped (block) density matrix:
/// populations on the diagonal and one coherence per 2x2 block. Entries
/// (2,1) and (4,3) are the conjugates of r12 and r34.
template <class Basis>
struct XBlock {
  double r11 = 0.0;
  double r22 = 0.0;
  double r33 = 0.0;
  double r44 = 0.0;
  Complex r12{};
  Complex r34{};

  double trace() const { return r11 + r22 + r33 + r44; }

  Matrix4 to_matrix() const {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = r11;
    m(1, 1) = r22;
    m(2, 2) = r33;
    m(3, 3) = r44;
    m(0, 1) = r12;
    m(1, 0) = std::conj(r12);
    m(2, 3) = r34;
    m(3, 2) = std::conj(r34);
    return m;
  }

  /// Reads the block entries of `m`, ignoring anything outside the blocks.
  static XBlock from_matrix(const Matrix4& m) {
    return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(0, 1), m(2, 3)};
  }

  friend bool operator==(const XBlock&, const XBlock&) = default;
};

/// Block density matrix in the product basis.
using BlockState = XBlock<ProductBasisTag>;
/// Block density matrix in the Bell basis |Phi+>, |Phi->, |Psi+>, |Psi->;
/// field rIJ holds rho_{I'J'}.
using BellState4 = XBlock<BellBasisTag>;

/// Unit trace and positive semidefinite blocks within tolerance.
bool is_valid(const BlockState& b);

/// Two-atom state in the collective basis
/// |g> = |gg>, |e> = |ee>, |s> = (|ge> + |eg>)/sqrt2, |a> = (|eg> - |ge>)/sqrt2.
///
/// `reg` is the two-photon coherence <e|rho|g>. `ras` is the coherence
/// between the one-excitation states, stored as <s|rho|a>; this is the
/// orientation in which the equations of motion carry the -2i*Omega12 phase.
/// Its conjugate is `rsa()`.
struct CollectiveState {
  double ree = 0.0;
  double rss = 0.0;
  double raa = 0.0;
  double rgg = 1.0;
  Complex reg{};
  Complex ras{};

  Complex rsa() const { return std::conj(ras); }
  double trace() const { return rgg + ree + rss + raa; }
};

/// Full 4x4 density matrix over the product basis.
class DensityMatrix4 {
 public:
  DensityMatrix4() = default;
  explicit DensityMatrix4(const Matrix4& m) : m_(m) {}

  static DensityMatrix4 from_block(const BlockState& b) { return DensityMatrix4(b.to_matrix()); }
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix4 projector(const Vector4& psi);

  const Matrix4& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Block entries only; cross-block entries are dropped.
  BlockState block() const { return BlockState::from_matrix(m_); }

 private:
  Matrix4 m_ = Matrix4::Zero();
};

struct Diagnostics {
  double hermitian_residual = 0.0;  // max |m - m^dagger|
  double trace_residual = 0.0;      // |tr m - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part

  bool hermitian() const { return hermitian_residual <= tolerance::kHermitian; }
  bool unit_trace() const { return trace_residual <= tolerance::kTrace; }
  bool positive() const { return min_eigenvalue >= -tolerance::kPositivity; }
  bool valid() const { return hermitian() && unit_trace() && positive(); }
};

/// Reports Hermiticity, trace and positivity residuals. Never throws.
Diagnostics validate(const DensityMatrix4& m);

/// True iff every entry coupling {|gg>,|ee>} to {|ge>,|eg>} has modulus < tol.
bool is_block_form(const DensityMatrix4& m, double tol = tolerance::kHermitian);

/// The constant matrix U with rho' = U rho U^dagger; row i is <i'|.
const Matrix4& bell_transform();

/// Bell basis vector |i'> (i = 0..3) in product-basis coordinates.
Vector4 bell_vector(int i);

BellState4 to_bell(const BlockState& b);
BlockState from_bell(const BellState4& p);

CollectiveState to_collective(const BlockState& b);
BlockState from_collective(const CollectiveState& c);

}  // namespace twoatom
