#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/gram_spectra.hpp"
#include "twqkd/security_bounds.hpp"
#include "twqkd/verify.hpp"

using namespace twqkd;

namespace {

std::vector<oracle::Component> components(const Ensemble& e) {
  std::vector<oracle::Component> out;
  for (const auto& l : e.labels()) out.push_back({l.prep_bit, static_cast<int>(l.pauli), l.weight});
  return out;
}

void check_spectrum(const Spectrum& s, std::vector<double> expected, double tol) {
  std::sort(expected.begin(), expected.end(), std::greater<>());
  REQUIRE(s.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(s[i] - expected[i]) <= tol);
}

// Nonzero part of a spectrum, padded with zeros to n entries.
std::vector<double> padded(std::vector<double> v, std::size_t n) {
  std::sort(v.begin(), v.end(), std::greater<>());
  v.resize(n, 0.0);
  return v;
}

}  // namespace

TEST_CASE("Pauli table agrees with matrix products") {
  const PauliTable& t = standard_pauli_table();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Eigen::Matrix2cd prod = oracle::pauli(a) * oracle::pauli(b);
      const PauliProduct p = t[a][b];
      const Eigen::Matrix2cd expect = p.phase * oracle::pauli(static_cast<int>(p.result));
      CHECK((prod - expect).cwiseAbs().maxCoeff() < 1e-15);
      CHECK((pauli_matrix(static_cast<Pauli>(a)) - oracle::pauli(a)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(Ensemble({}), DomainError);
  CHECK_THROWS_AS(Ensemble({{2, Pauli::I, 1.0}}), DomainError);
  CHECK_THROWS_AS(Ensemble({{0, Pauli::I, -0.5}, {1, Pauli::I, 1.5}}), DomainError);
  CHECK_THROWS_AS(Ensemble({{0, Pauli::I, 0.5}}), DomainError);
  CHECK_NOTHROW(Ensemble({{0, Pauli::I, 0.5}, {1, Pauli::Z, 0.5}}));
  CHECK_THROWS_AS(builtin_ensemble("nope"), DomainError);
  CHECK_THROWS_AS(holevo(identity_attack(), {{0.3, simple_mixture()}}), DomainError);
}

TEST_CASE("interference Gram matrix has its closed form and spectrum") {
  for (double q : {0.0, 0.1, 0.3}) {
    const double xmax = max_interference(q);
    for (double x : {0.0, 0.5 * xmax, xmax}) {
      const AncillaOverlaps a = interference_attack(q, x);
      CHECK((gram_matrix(a, simple_mixture()) - reference_interference_gram(q, x)).cwiseAbs().maxCoeff() < 1e-12);
      check_spectrum(spectrum_of(a, simple_mixture()), interference_eigenvalues(q, x), 1e-10);
    }
  }
}

TEST_CASE("six-state blocks") {
  for (double q : {0.05, 0.2, 0.4}) {
    const AncillaOverlaps a = symmetric_attack(q);
    for (int k : {1, 2}) {
      const ComplexMatrix g = gram_matrix(a, six_state_block(k));
      CHECK((g - reference_six_state_block(k, q)).cwiseAbs().maxCoeff() < 1e-12);
      // single eigenvalue 1 - 1.5q, threefold 0.5q
      check_spectrum(spectrum_of(a, six_state_block(k)), {1 - 1.5 * q, 0.5 * q, 0.5 * q, 0.5 * q}, 1e-10);
      check_spectrum(Spectrum(oracle::hermitian_eigenvalues(reference_six_state_block(k, q))),
                     {1 - 1.5 * q, 0.5 * q, 0.5 * q, 0.5 * q}, 1e-10);
    }
    // blocks are mutually orthogonal
    const Ensemble b1 = six_state_block(1), b2 = six_state_block(2);
    for (const auto& s1 : b1.labels())
      for (const auto& s2 : b2.labels()) CHECK(std::abs(joint_overlap(a, s1, s2)) < 1e-14);
    for (Pauli w : {Pauli::X, Pauli::Y}) {
      CHECK((gram_matrix(a, conjugate_pair_mixture(w)) - reference_conjugate_pair(w, q)).cwiseAbs().maxCoeff() <
            1e-12);
      check_spectrum(spectrum_of(a, conjugate_pair_mixture(w)),
                     {0.5 * q, 0.5 * q, 0.5 * (1 - q), 0.5 * (1 - q)}, 1e-10);
    }
    CHECK(von_neumann_entropy(spectrum_of(a, eight_state_mixture())) ==
          doctest::Approx(eight_state_entropy_closed_form(q)).epsilon(1e-12));
  }
}

TEST_CASE("sigma_x conjugation maps one block onto the other") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const AncillaOverlaps a{BlochDirection::z(), oracle::overlaps_of(oracle::random_isometry(rng))};
    std::vector<JointStateLabel> moved;
    const PauliTable& t = standard_pauli_table();
    const Ensemble b1 = six_state_block(1);
    for (const auto& l : b1.labels()) moved.push_back({l.prep_bit, t[1][static_cast<int>(l.pauli)].result, l.weight});
    const Spectrum s1 = spectrum_of(a, six_state_block(1));
    const Spectrum s2 = spectrum_of(a, Ensemble(moved));
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-10));
  }
}

TEST_CASE("Gram spectra equal explicit density-matrix spectra") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const auto u = oracle::random_isometry(rng);
    const AncillaOverlaps a{BlochDirection::z(), oracle::overlaps_of(u)};
    for (const auto& [name, e] : builtin_ensembles()) {
      CAPTURE(name);
      const Spectrum s = spectrum_of(a, e);
      const auto ref = oracle::hermitian_eigenvalues(oracle::density(u, components(e)));
      const auto got = padded(s.eigenvalues(), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-9);
    }
  }
}

TEST_CASE("Holevo quantities of the symmetric attack") {
  for (double q : {0.01, 0.1, 0.3, 0.49}) {
    const AncillaOverlaps a = symmetric_attack(q);
    CHECK(holevo(a, simple_conditionals()) == doctest::Approx(oracle::h2(q)).epsilon(1e-9));
    CHECK(average_holevo(a, EnsembleFamily::ModifiedLm05Prime) == doctest::Approx(oracle::h2(q)).epsilon(1e-9));
    CHECK(average_holevo(a, EnsembleFamily::SixState) == doctest::Approx(six_state_closed_form(q)).epsilon(1e-9));
    for (Pauli w : {Pauli::X, Pauli::Y, Pauli::Z})
      CHECK(von_neumann_entropy(spectrum_of(a, four_op_conditionals(w)[0].ensemble)) ==
            doctest::Approx(1 + oracle::h2(q)).epsilon(1e-9));
  }
  CHECK(holevo(identity_attack(), simple_conditionals()) == doctest::Approx(0.0));
}

TEST_CASE("interference lowers Eve's entropy") {
  const double q = 0.2;
  const double xmax = max_interference(q);
  const double s0 = von_neumann_entropy(spectrum_of(interference_attack(q, 0), simple_mixture()));
  const double s1 = von_neumann_entropy(spectrum_of(interference_attack(q, 0.5 * xmax), simple_mixture()));
  CHECK(s0 == doctest::Approx(1 + oracle::h2(q)));
  CHECK(s1 < s0);
}
