#include "twqkd/math_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "twqkd/errors.hpp"

namespace twqkd {

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  std::sort(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>());
}

double Spectrum::sum() const {
  return std::accumulate(eigenvalues_.begin(), eigenvalues_.end(), 0.0);
}

double Spectrum::min() const { return eigenvalues_.empty() ? 0.0 : eigenvalues_.back(); }
double Spectrum::max() const { return eigenvalues_.empty() ? 0.0 : eigenvalues_.front(); }

double Spectrum::entropy() const { return von_neumann_entropy(*this); }

Spectrum Spectrum::merge(const Spectrum& a, double weight_a, const Spectrum& b,
                         double weight_b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  for (double l : a.eigenvalues_) out.push_back(weight_a * l);
  for (double l : b.eigenvalues_) out.push_back(weight_b * l);
  return Spectrum(std::move(out));
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw NonHermitianInput("matrix must be square and non-empty");
  const double residual = hermiticity_residual(m);
  if (residual > kHermitianTol)
    throw NonHermitianInput("matrix is not Hermitian (residual " + std::to_string(residual) + ")");
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double von_neumann_entropy(const Spectrum& s) {
  double total = 0.0;
  for (double l : s.eigenvalues()) {
    if (l < -kPsdTol)
      throw NegativeEigenvalue("eigenvalue " + std::to_string(l) + " below tolerance");
    l = std::clamp(l, 0.0, 1.0);
    if (l < kZeroEigenvalue) continue;
    total -= l * std::log2(l);
  }
  return total;
}

}  // namespace twqkd
