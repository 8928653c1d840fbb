#include "doctest.h"
#include "oracles.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/simulator.hpp"
#include "twqkd/tightness_search.hpp"

using namespace twqkd;

TEST_CASE("Hermitian coordinates are an isometry") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const OverlapMatrix g = oracle::overlaps_of(oracle::random_isometry(rng));
    const auto p = hermitian_coordinates(g);
    CHECK(p.norm() == doctest::Approx(g.norm()).epsilon(1e-12));
    CHECK((hermitian_from_coordinates(p) - g).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("every candidate is a physical isotropic attack with the target noise") {
  for (double qf : {0.05, 0.1, 0.3}) {
    const AttackParameterization param(qf);
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
      const auto c = param.candidate(param.sample(rng));
      CHECK(validate(c.attack).ok());
      CHECK(disturbance_spread(c.attack, 50) < 1e-9);
      CHECK(disturbance(c.attack, {0.3, 0.4}) == doctest::Approx(qf).epsilon(1e-9));
    }
  }
}

TEST_CASE("no candidate beats h(qf)") {
  for (EnsembleFamily f : {EnsembleFamily::Simple, EnsembleFamily::ModifiedLm05Prime, EnsembleFamily::SixState}) {
    SearchOptions o;
    o.family = f;
    o.qf = 0.15;
    o.n_candidates = 1500;
    o.seed = 3;
    const SearchReport r = search_max_holevo(o);
    CAPTURE(family_name(f));
    CHECK(r.n_exceeding == 0);
    CHECK(r.best_chi <= r.bound + 1e-9);
    CHECK(r.symmetric_is_best);
    CHECK(r.max_constraint_residual < 1e-9);
    CHECK(r.max_isotropy_spread < 1e-9);
    if (f == EnsembleFamily::SixState) {
      REQUIRE(r.lower_reference.has_value());
      CHECK(r.best_chi == doctest::Approx(*r.lower_reference).epsilon(1e-9));
    } else {
      CHECK(r.gap < 1e-6);
    }
  }
}

TEST_CASE("search without the symmetric seed is seed-reproducible") {
  SearchOptions o;
  o.family = EnsembleFamily::ModifiedLm05Prime;
  o.include_symmetric = false;
  o.n_candidates = 500;
  o.seed = 11;
  const SearchReport a = search_max_holevo(o);
  const SearchReport b = search_max_holevo(o);
  CHECK(a.best_chi == b.best_chi);
  CHECK(a.best_chi <= a.bound + 1e-9);
}

TEST_CASE("search input checks") {
  SearchOptions o;
  o.qf = 0.7;
  CHECK_THROWS_AS(search_max_holevo(o), DomainError);
  o.qf = 0.1;
  o.n_candidates = 0;
  o.include_symmetric = false;
  o.refine_top = 0;
  CHECK_THROWS_AS(search_max_holevo(o), NoFeasibleCandidate);
}

TEST_CASE("interference sweep") {
  const double xmax = max_interference(0.3);
  const SweepResult r = sweep_interference(0.3, linear_grid(0, xmax, 20));
  CHECK(r.points.size() == 20);
  CHECK(r.non_increasing);
  CHECK(r.strictly_decreasing);
  CHECK(r.points[0].entropy == doctest::Approx(1 + oracle::h2(0.3)));
  CHECK_THROWS_AS(sweep_interference(0.3, {0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(sweep_interference(0.3, {0.0, xmax + 0.01}), InfeasibleParameters);
}
