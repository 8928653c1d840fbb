#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace twqkd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
// Eigenvalues below this magnitude contribute exactly zero to entropies.
inline constexpr double kZeroEigenvalue = 1e-12;

/// Real eigenvalues of a Hermitian matrix, kept sorted in descending order.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> eigenvalues);

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  double operator[](std::size_t i) const { return eigenvalues_[i]; }

  double sum() const;
  double min() const;
  double max() const;

  /// von Neumann entropy in bits; see von_neumann_entropy().
  double entropy() const;

  /// Concatenate two spectra, each eigenvalue multiplied by its block weight.
  static Spectrum merge(const Spectrum& a, double weight_a, const Spectrum& b,
                        double weight_b);

 private:
  std::vector<double> eigenvalues_;
};

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Largest |m(i,j) - conj(m(j,i))| over all entries.
double hermiticity_residual(const ComplexMatrix& m);

/// All eigenvalues of a Hermitian matrix (dimension <= 8), descending.
/// Throws NonHermitianInput when the symmetry check fails.
Spectrum hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending, columns
/// of `vectors` are the matching orthonormal eigenvectors.
struct HermitianEigensystem {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Binary entropy h(x) in bits, with 0 log 0 = 0. Throws DomainError outside [0,1].
double binary_entropy(double x);

/// -sum l log2 l over the spectrum. Throws NegativeEigenvalue below -1e-10.
double von_neumann_entropy(const Spectrum& s);

}  // namespace twqkd
