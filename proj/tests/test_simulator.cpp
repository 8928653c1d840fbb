#include <cmath>
#include <set>

#include "doctest.h"
#include "twqkd/errors.hpp"
#include "twqkd/simulator.hpp"

using namespace twqkd;

namespace {

SimulationConfig config(const std::string& protocol, const AncillaOverlaps& attack, std::uint64_t rounds,
                        std::uint64_t seed) {
  SimulationConfig c;
  c.protocol = find_protocol(protocol);
  c.attack = attack;
  c.n_rounds = rounds;
  c.seed = seed;
  return c;
}

bool within(double rate, double expect, std::uint64_t n, double sigmas) {
  const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(n));
  return std::abs(rate - expect) <= sigmas * se;
}

}  // namespace

TEST_CASE("rng streams") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  Rng base(7);
  Rng s1 = base.split(1), s1b = base.split(1), s2 = base.split(2);
  CHECK(s1.next() == s1b.next());
  CHECK(s1.next() != s2.next());
  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("runs are reproducible and seed-dependent") {
  const auto c = config("twqkd-six-state", symmetric_attack(0.1), 20000, 5);
  const SimulationReport r1 = run(c);
  const SimulationReport r2 = run(c);
  CHECK(r1 == r2);
  auto c2 = c;
  c2.seed = 6;
  CHECK_FALSE(run(c2) == r1);
}

TEST_CASE("round accounting") {
  for (const char* name : {"simple", "lm05-prime", "twqkd-six-state", "lm05-generalized"}) {
    const SimulationReport r = run(config(name, symmetric_attack(0.05), 10000, 3));
    std::uint64_t matched = 0;
    for (const auto& d : r.per_direction) matched += d.n;
    CHECK(matched + r.cm_basis_mismatch == r.cm_rounds);
    CHECK(r.cm_rounds + r.em_tested + r.sifted + r.discarded == 10000);
    CHECK(r.pooled_cm_samples() == matched);
  }
}

TEST_CASE("identity attack on deterministic protocols never errs") {
  for (const char* name : {"lm05-prime", "lm05-prime-modified", "twqkd-six-state", "lm05-generalized"}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SimulationReport r = run(config(name, identity_attack(), 2000, seed));
      CHECK(r.em_errors == 0);
      CHECK(r.sifted_errors == 0);
      CHECK(r.discarded == 0);
      for (const auto& d : r.per_direction) CHECK(d.flips == 0);
    }
  }
}

TEST_CASE("non-decodable rounds are discarded") {
  const SimulationReport r = run(config("simple", identity_attack(), 20000, 1));
  CHECK(r.discarded > 0);
  CHECK(within(static_cast<double>(r.discarded) / 20000.0, 0.25, 20000, 4));
  CHECK(r.em_errors == 0);
}

TEST_CASE("full backward flip inverts every decoded bit") {
  auto c = config("twqkd-six-state", identity_attack(), 5000, 2);
  c.noise = NoiseModel::independent_backward(1.0);
  const SimulationReport r = run(c);
  CHECK(r.em_errors == r.em_tested);
  CHECK(r.sifted_errors == r.sifted);
  CHECK(r.pooled_forward_noise() == 0.0);
}

TEST_CASE("symmetric attack: forward noise qf in every direction, overall noise qf") {
  const SimulationReport r = run(config("twqkd-six-state", symmetric_attack(0.1), 100000, 1));
  for (const auto& d : r.per_direction) {
    CAPTURE(d.direction);
    CHECK(within(d.rate(), 0.1, d.n, 3));
  }
  CHECK(within(static_cast<double>(r.sifted_errors) / r.sifted, 0.1, r.sifted, 4));
}

TEST_CASE("phase-covariant attack: d/2 on the equator, d on the poles") {
  const double d = 0.2;
  const SimulationReport eq = run(config("lm05-generalized", phase_covariant_attack(d), 200000, 4));
  CHECK(within(eq.pooled_forward_noise(), d / 2, eq.pooled_cm_samples(), 4));
  const SimulationReport lm = run(config("lm05-prime", phase_covariant_attack(d), 200000, 4));
  for (const auto& s : lm.per_direction) {
    CAPTURE(s.direction);
    CHECK(within(s.rate(), s.direction == "z" ? d : d / 2, s.n, 4));
  }
}

TEST_CASE("backward noise adds to the encoding-mode error") {
  auto c = config("lm05-prime", symmetric_attack(0.05), 200000, 9);
  c.noise = NoiseModel::independent_backward(0.03);
  const SimulationReport r = run(c);
  const double q = c.noise.overall(0.05);
  CHECK(within(static_cast<double>(r.sifted_errors) / r.sifted, q, r.sifted, 4));
}

TEST_CASE("configuration errors") {
  auto c = config("lm05-prime", identity_attack(), 0, 1);
  CHECK_THROWS_AS(run(c), ConfigError);
  c.n_rounds = 10;
  c.protocol.p_control = 0.7;
  CHECK_THROWS_AS(run(c), ConfigError);
  c.protocol.p_control = 0.5;
  c.em_test_fraction = 1.5;
  CHECK_THROWS_AS(run(c), ConfigError);
  c.em_test_fraction = 0.1;
  OverlapMatrix g = identity_attack().matrix();
  g(0, 0) = 2.0;
  c.attack = AncillaOverlaps(BlochDirection::z(), g);
  CHECK_THROWS_AS(run(c), ConfigError);
}

TEST_CASE("key-rate estimate") {
  const SimulationReport r = run(config("lm05-prime-modified", symmetric_attack(0.05), 50000, 3));
  const double qf = r.pooled_forward_noise();
  const double expect = 1 - 2 * binary_entropy(qf);
  CHECK(estimate_key_rate(r, BoundPolicy::RefuseLowerBound) == doctest::Approx(expect));

  const SimulationReport six = run(config("twqkd-six-state", symmetric_attack(0.05), 50000, 3));
  CHECK_THROWS_AS(estimate_key_rate(six, BoundPolicy::RefuseLowerBound), LowerBoundRefused);
  CHECK_NOTHROW(estimate_key_rate(six, BoundPolicy::AllowLowerBound));

  auto c = config("lm05-prime", identity_attack(), 100, 3);
  c.protocol.p_control = 0.0;
  c.protocol.p_encode = 1.0;
  CHECK_THROWS_AS(estimate_key_rate(run(c), BoundPolicy::RefuseLowerBound), InsufficientStatistics);
}
