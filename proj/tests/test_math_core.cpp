#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/math_core.hpp"

using namespace twqkd;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("eigenvalues agree with Jacobi on the real embedding") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const ComplexMatrix m = random_hermitian(rng, n);
      const Spectrum s = hermitian_eigenvalues(m);
      const auto ref = oracle::hermitian_eigenvalues(m);
      REQUIRE(s.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(s[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("degenerate spectra keep multiplicity") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.diagonal() << 0.25, 0.25, 0.25, 0.25;
  const Spectrum s = hermitian_eigenvalues(m);
  CHECK(s.size() == 4);
  CHECK(s.min() == doctest::Approx(0.25));
  CHECK(von_neumann_entropy(s) == doctest::Approx(2.0));
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(m), NonHermitianInput);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)), NonHermitianInput);
  CHECK_FALSE(is_hermitian(m));
  CHECK(hermiticity_residual(m) > 0.5);
}

TEST_CASE("eigensystem reconstructs the matrix") {
  std::mt19937_64 rng(3);
  const ComplexMatrix m = random_hermitian(rng, 5);
  const HermitianEigensystem es = hermitian_eigensystem(m);
  const ComplexMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  // 40-digit reference values
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328639).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.4689955935892812212).epsilon(1e-14));
  CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
  CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(Spectrum({1.0, 0.0})) == 0.0);
  CHECK(von_neumann_entropy(Spectrum({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(Spectrum({0.9, 0.1})) == doctest::Approx(binary_entropy(0.1)));
  // tiny negative eigenvalues from round-off are clipped
  CHECK(von_neumann_entropy(Spectrum({1.0, -1e-13})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(von_neumann_entropy(Spectrum({1.1, -0.1})), NegativeEigenvalue);
}

TEST_CASE("spectrum ordering and merge") {
  const Spectrum s({0.1, 0.7, 0.2});
  CHECK(s[0] == 0.7);
  CHECK(s[2] == 0.1);
  CHECK(s.sum() == doctest::Approx(1.0));
  const Spectrum m = Spectrum::merge(Spectrum({1.0}), 0.5, Spectrum({0.5, 0.5}), 0.5);
  CHECK(m.size() == 3);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[2] == doctest::Approx(0.25));
}
