#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "twqkd/math_core.hpp"

namespace twqkd {

using Qubit = Eigen::Vector2cd;
using OverlapMatrix = Eigen::Matrix4cd;

/// Pure qubit |Omega> = sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>.
///
/// The sine sits on |0>, so theta = 0 is |1> and theta = pi is |0>; the Bloch
/// vector is (sin t cos p, sin t sin p, -cos t). Kept this way so the
/// ancilla expansion used by disturbance() reads off directly.
struct PureQubit {
  double theta = 0.0;
  double phi = 0.0;

  Qubit amplitudes() const;
  /// cos(theta/2)|0> - e^{i phi} sin(theta/2)|1>
  Qubit orthogonal() const;
  Eigen::Vector3d bloch_vector() const;
};

/// Axis of a preparation/measurement basis on the Bloch sphere.
class BlochDirection {
 public:
  enum class Kind { X, Y, Z, General };

  static BlochDirection x();
  static BlochDirection y();
  static BlochDirection z();
  /// Basis whose |0> is PureQubit{theta, phi}.
  static BlochDirection general(double theta, double phi);
  static BlochDirection equatorial(double phi) { return general(std::numbers::pi / 2.0, phi); }
  /// From a Bloch vector of |0>_k; throws DomainError unless unit norm within 1e-12.
  static BlochDirection from_vector(const Eigen::Vector3d& n);

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// {|0>_k, |1>_k} in z-basis components. |0>_x = (|0>+|1>)/sqrt2, |0>_y = (|0>+i|1>)/sqrt2.
  std::array<Qubit, 2> eigenstates() const;
  PureQubit state(int bit) const;
  Eigen::Vector3d bloch_vector() const;
  std::string label() const;

  friend bool operator==(const BlochDirection& a, const BlochDirection& b) {
    return a.kind_ == b.kind_ && a.theta_ == b.theta_ && a.phi_ == b.phi_;
  }

 private:
  BlochDirection(Kind kind, double theta, double phi) : kind_(kind), theta_(theta), phi_(phi) {}

  Kind kind_;
  double theta_;
  double phi_;
};

/// Row/column index of |eps_ij> in the overlap matrix: 00, 01, 10, 11.
constexpr int ancilla_index(int i, int j) { return 2 * i + j; }

/// Eve's forward attack U|i>_k|e> = |0>_k|e_i0> + |1>_k|e_i1>, described by the
/// Gram matrix g(ij, kl) = <e_ij|e_kl> of the four ancilla states in basis k.
class AncillaOverlaps {
 public:
  AncillaOverlaps(BlochDirection basis, const OverlapMatrix& g) : basis_(basis), g_(g) {}

  const BlochDirection& reference_basis() const { return basis_; }
  const OverlapMatrix& matrix() const { return g_; }
  Complex operator()(int row, int col) const { return g_(row, col); }
  /// <e_ij|e_kl>
  Complex overlap(int i, int j, int k, int l) const {
    return g_(ancilla_index(i, j), ancilla_index(k, l));
  }

 private:
  BlochDirection basis_;
  OverlapMatrix g_;
};

struct ValidationReport {
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  std::array<double, 2> normalization_residual{};
  double orthogonality_residual = 0.0;

  bool hermitian = false;
  bool psd = false;
  bool normalized = false;
  bool orthogonal = false;

  bool ok() const { return hermitian && psd && normalized && orthogonal; }
  std::string summary() const;
};

/// Checks hermiticity, PSD (>= -1e-10), and the unitarity conditions
/// g(i0,i0)+g(i1,i1) = 1, g(00,10)+g(01,11) = 0 (both within 1e-10).
ValidationReport validate(const AncillaOverlaps& a);

/// The no-interaction attack: e00 = e11 = e, e01 = e10 = 0.
AncillaOverlaps identity_attack();

/// Attack simulating a depolarizing channel with flip probability qf:
/// diag (1-qf, qf, qf, 1-qf), g(00,11) = 1-2qf, every other overlap zero.
/// Feasible (PSD) for qf in [0, 2/3]; DomainError otherwise.
AncillaOverlaps symmetric_attack(double qf);

/// Same zero pattern with g(00,11) = 1-d and disturbance d on the z axis;
/// equatorial states see d/2. Feasible for d in [0, 1].
AncillaOverlaps phase_covariant_attack(double d);

/// Symmetric-attack diagonal with g(00,10) = x, g(01,11) = -x, g(00,11) = 1-2qf.
/// Throws InfeasibleParameters when the result is not PSD.
AncillaOverlaps interference_attack(double qf, double x);

/// Largest x for which interference_attack(qf, x) is feasible (bisection on PSD).
double max_interference(double qf);

/// Re-express the attack in the eigenbasis of k.
AncillaOverlaps transform_basis(const AncillaOverlaps& a, const BlochDirection& k);

/// Coefficients v with |e(Omega_perp)> = sum_a v_a |e_a>, the ancilla states
/// taken in `reference`; the disturbance is v^dag g v.
Eigen::Vector4cd flip_coefficients(const BlochDirection& reference, const PureQubit& s);

/// Flip probability <e(Omega_perp)|e(Omega_perp)> of |Omega>, clipped to [0,1].
double disturbance(const AncillaOverlaps& a, const PureQubit& s);

/// Deterministic, roughly uniform points on the Bloch sphere (Fibonacci lattice).
std::vector<PureQubit> low_discrepancy_states(std::size_t n);

/// Spread (max - min) of the disturbance over low_discrepancy_states(n).
double disturbance_spread(const AncillaOverlaps& a, std::size_t n_samples);

/// True iff disturbance_spread(a, n_samples) < tol.
bool is_depolarizing(const AncillaOverlaps& a, std::size_t n_samples, double tol);

/// Explicit realization of the attack: four ancilla vectors in C^4 and the
/// isometry columns U|0>_z|e>, U|1>_z|e> in C^2 (x) C^4 (qubit index major).
struct AttackIsometry {
  OverlapMatrix ancillas;                    // column ancilla_index(i,j) = |e_ij>
  Eigen::Matrix<Complex, 8, 2> columns;

  Eigen::Matrix<Complex, 8, 1> apply(const Qubit& input) const { return columns * input; }
  /// Qubit state after the attack, ancilla traced out.
  Eigen::Matrix2cd reduced_state(const Qubit& input) const;
};

/// Factorizes g (eigenvalues clipped at 0) into explicit ancilla vectors.
/// Throws NotPSD if an eigenvalue lies below -1e-10.
AttackIsometry realize_isometry(const AncillaOverlaps& a);

}  // namespace twqkd
