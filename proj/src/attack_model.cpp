#include "twqkd/attack_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twqkd/errors.hpp"

namespace twqkd {

namespace {

constexpr double kConstraintTol = 1e-10;
const Complex kI{0.0, 1.0};

double min_eig(const OverlapMatrix& g) {
  return hermitian_eigenvalues(ComplexMatrix(g)).min();
}

bool psd_feasible(const OverlapMatrix& g) {
  return hermiticity_residual(g) <= kHermitianTol && min_eig(g) >= -kPsdTol;
}

OverlapMatrix symmetric_pattern(double diag_flip, double corner) {
  OverlapMatrix g = OverlapMatrix::Zero();
  g(0, 0) = 1.0 - diag_flip;
  g(1, 1) = diag_flip;
  g(2, 2) = diag_flip;
  g(3, 3) = 1.0 - diag_flip;
  g(0, 3) = corner;
  g(3, 0) = corner;
  return g;
}

// T(ij, mn) = c_im conj(c_jn) with c_im = <m_from|i_to>: expands the ancilla
// states of the `to` basis in those of the `from` basis.
OverlapMatrix change_of_basis(const BlochDirection& from, const BlochDirection& to) {
  const auto r = from.eigenstates();
  const auto k = to.eigenstates();
  Eigen::Matrix2cd c;
  for (int i = 0; i < 2; ++i)
    for (int m = 0; m < 2; ++m) c(i, m) = r[m].dot(k[i]);  // dot() conjugates the left side
  OverlapMatrix t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          t(ancilla_index(i, j), ancilla_index(m, n)) = c(i, m) * std::conj(c(j, n));
  return t;
}

}  // namespace

Qubit PureQubit::amplitudes() const {
  return Qubit(std::sin(theta / 2.0), std::exp(kI * phi) * std::cos(theta / 2.0));
}

Qubit PureQubit::orthogonal() const {
  return Qubit(std::cos(theta / 2.0), -std::exp(kI * phi) * std::sin(theta / 2.0));
}

Eigen::Vector3d PureQubit::bloch_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), -std::cos(theta)};
}

BlochDirection BlochDirection::x() { return {Kind::X, std::numbers::pi / 2.0, 0.0}; }
BlochDirection BlochDirection::y() {
  return {Kind::Y, std::numbers::pi / 2.0, std::numbers::pi / 2.0};
}
BlochDirection BlochDirection::z() { return {Kind::Z, std::numbers::pi, 0.0}; }
BlochDirection BlochDirection::general(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw DomainError("Bloch angles must be finite");
  return {Kind::General, theta, phi};
}

BlochDirection BlochDirection::from_vector(const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) throw DomainError("Bloch direction must be a unit vector");
  const double theta = std::acos(std::clamp(-n.z(), -1.0, 1.0));
  double phi = std::atan2(n.y(), n.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return general(theta, phi);
}

std::array<Qubit, 2> BlochDirection::eigenstates() const {
  const double s = 1.0 / std::sqrt(2.0);
  switch (kind_) {
    case Kind::X:
      return {Qubit(s, s), Qubit(s, -s)};
    case Kind::Y:
      return {Qubit(s, s * kI), Qubit(s, -s * kI)};
    case Kind::Z:
      return {Qubit(1.0, 0.0), Qubit(0.0, 1.0)};
    case Kind::General:
      break;
  }
  const PureQubit zero{theta_, phi_};
  return {zero.amplitudes(), zero.orthogonal()};
}

PureQubit BlochDirection::state(int bit) const {
  if (bit == 0) return {theta_, phi_};
  // Antipodal point; matches eigenstates()[1] up to a global phase.
  return {std::numbers::pi - theta_, phi_ + std::numbers::pi};
}

Eigen::Vector3d BlochDirection::bloch_vector() const {
  switch (kind_) {
    case Kind::X:
      return Eigen::Vector3d::UnitX();
    case Kind::Y:
      return Eigen::Vector3d::UnitY();
    case Kind::Z:
      return Eigen::Vector3d::UnitZ();
    case Kind::General:
      break;
  }
  return PureQubit{theta_, phi_}.bloch_vector();
}

std::string BlochDirection::label() const {
  switch (kind_) {
    case Kind::X:
      return "x";
    case Kind::Y:
      return "y";
    case Kind::Z:
      return "z";
    case Kind::General:
      break;
  }
  std::ostringstream os;
  os.precision(6);
  os << "theta=" << theta_ << ",phi=" << phi_;
  return os.str();
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "hermitian=" << hermitian << " (" << hermiticity_residual << ")"
     << " psd=" << psd << " (min eig " << min_eigenvalue << ")"
     << " normalized=" << normalized << " (" << normalization_residual[0] << ", "
     << normalization_residual[1] << ")"
     << " orthogonal=" << orthogonal << " (" << orthogonality_residual << ")";
  return os.str();
}

ValidationReport validate(const AncillaOverlaps& a) {
  const OverlapMatrix& g = a.matrix();
  ValidationReport r;
  r.hermiticity_residual = hermiticity_residual(g);
  r.hermitian = r.hermiticity_residual <= kHermitianTol;
  // Eigenvalues of the Hermitian part; meaningful even when the check above fails.
  const OverlapMatrix sym = 0.5 * (g + g.adjoint());
  r.min_eigenvalue = hermitian_eigenvalues(ComplexMatrix(sym)).min();
  r.psd = r.min_eigenvalue >= -kPsdTol;
  for (int i = 0; i < 2; ++i)
    r.normalization_residual[i] =
        std::abs(g(ancilla_index(i, 0), ancilla_index(i, 0)) +
                 g(ancilla_index(i, 1), ancilla_index(i, 1)) - 1.0);
  r.normalized = std::max(r.normalization_residual[0], r.normalization_residual[1]) <= kConstraintTol;
  r.orthogonality_residual = std::abs(g(ancilla_index(0, 0), ancilla_index(1, 0)) +
                                      g(ancilla_index(0, 1), ancilla_index(1, 1)));
  r.orthogonal = r.orthogonality_residual <= kConstraintTol;
  return r;
}

AncillaOverlaps identity_attack() {
  return {BlochDirection::z(), symmetric_pattern(0.0, 1.0)};
}

AncillaOverlaps symmetric_attack(double qf) {
  if (!std::isfinite(qf)) throw DomainError("symmetric_attack: qf must be finite");
  const OverlapMatrix g = symmetric_pattern(qf, 1.0 - 2.0 * qf);
  if (!psd_feasible(g))
    throw DomainError("symmetric_attack: qf = " + std::to_string(qf) + " is not realizable");
  return {BlochDirection::z(), g};
}

AncillaOverlaps phase_covariant_attack(double d) {
  if (!std::isfinite(d)) throw DomainError("phase_covariant_attack: d must be finite");
  const OverlapMatrix g = symmetric_pattern(d, 1.0 - d);
  if (!psd_feasible(g))
    throw DomainError("phase_covariant_attack: d = " + std::to_string(d) + " is not realizable");
  return {BlochDirection::z(), g};
}

AncillaOverlaps interference_attack(double qf, double x) {
  if (!std::isfinite(qf) || !std::isfinite(x) || x < 0.0)
    throw DomainError("interference_attack: need finite qf and x >= 0");
  OverlapMatrix g = symmetric_pattern(qf, 1.0 - 2.0 * qf);
  g(ancilla_index(0, 0), ancilla_index(1, 0)) = x;
  g(ancilla_index(1, 0), ancilla_index(0, 0)) = x;
  g(ancilla_index(0, 1), ancilla_index(1, 1)) = -x;
  g(ancilla_index(1, 1), ancilla_index(0, 1)) = -x;
  if (!psd_feasible(g))
    throw InfeasibleParameters("interference_attack: (qf, x) = (" + std::to_string(qf) + ", " +
                               std::to_string(x) + ") is not realizable");
  return {BlochDirection::z(), g};
}

double max_interference(double qf) {
  symmetric_attack(qf);  // domain check on qf
  auto feasible = [qf](double x) {
    try {
      interference_attack(qf, x);
      return true;
    } catch (const InfeasibleParameters&) {
      return false;
    }
  };
  double lo = 0.0;
  double hi = 1.0;
  if (feasible(hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

AncillaOverlaps transform_basis(const AncillaOverlaps& a, const BlochDirection& k) {
  const OverlapMatrix t = change_of_basis(a.reference_basis(), k);
  const OverlapMatrix g = t.conjugate() * a.matrix() * t.transpose();
  return {k, g};
}

Eigen::Vector4cd flip_coefficients(const BlochDirection& reference, const PureQubit& s) {
  const auto ref = reference.eigenstates();
  const Qubit kept = s.amplitudes();
  const Qubit flipped = s.orthogonal();
  // e(Omega_perp) = sum_mn <m|Omega> conj(<n|Omega_perp>) e_mn
  Eigen::Vector4cd v;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      v(ancilla_index(m, n)) = ref[m].dot(kept) * std::conj(ref[n].dot(flipped));
  return v;
}

double disturbance(const AncillaOverlaps& a, const PureQubit& s) {
  const Eigen::Vector4cd v = flip_coefficients(a.reference_basis(), s);
  const double d = std::real(v.dot(a.matrix() * v));
  return std::clamp(d, 0.0, 1.0);
}

std::vector<PureQubit> low_discrepancy_states(std::size_t n) {
  std::vector<PureQubit> out;
  out.reserve(n);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double theta = std::acos(std::clamp(-z, -1.0, 1.0));
    const double phi = std::fmod(golden_angle * static_cast<double>(i), 2.0 * std::numbers::pi);
    out.push_back({theta, phi});
  }
  return out;
}

double disturbance_spread(const AncillaOverlaps& a, std::size_t n_samples) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const PureQubit& s : low_discrepancy_states(n_samples)) {
    const double d = disturbance(a, s);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

bool is_depolarizing(const AncillaOverlaps& a, std::size_t n_samples, double tol) {
  return disturbance_spread(a, std::max<std::size_t>(n_samples, 1)) < tol;
}

Eigen::Matrix2cd AttackIsometry::reduced_state(const Qubit& input) const {
  const Eigen::Matrix<Complex, 8, 1> psi = apply(input);
  Eigen::Matrix2cd rho;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) rho(a, b) = psi.segment<4>(4 * b).dot(psi.segment<4>(4 * a));
  return rho;
}

AttackIsometry realize_isometry(const AncillaOverlaps& a) {
  const AncillaOverlaps in_z = a.reference_basis().kind() == BlochDirection::Kind::Z
                                   ? a
                                   : transform_basis(a, BlochDirection::z());
  const HermitianEigensystem es = hermitian_eigensystem(ComplexMatrix(in_z.matrix()));
  if (es.values.minCoeff() < -kPsdTol)
    throw NotPSD("realize_isometry: overlap matrix has eigenvalue " +
                 std::to_string(es.values.minCoeff()));
  // g = W L W^dagger  =>  ancilla vectors are the columns of sqrt(L) W^dagger.
  const Eigen::Vector4d root = es.values.cwiseMax(0.0).cwiseSqrt();
  AttackIsometry iso;
  iso.ancillas = root.asDiagonal() * es.vectors.adjoint();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) iso.columns.col(i).segment<4>(4 * j) = iso.ancillas.col(ancilla_index(i, j));
  return iso;
}

}  // namespace twqkd
