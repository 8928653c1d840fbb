#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "twqkd/attack_model.hpp"
#include "twqkd/security_bounds.hpp"

namespace twqkd {

/// Seedable, splittable generator: mt19937_64 keyed through SplitMix64.
/// uniform() uses the top 53 bits, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct SimulationConfig {
  ProtocolSpec protocol;
  AncillaOverlaps attack = identity_attack();
  NoiseModel noise;
  std::uint64_t n_rounds = 1;
  std::uint64_t seed = 0;
  // Fraction of kept encoding-mode rounds disclosed to estimate Q.
  double em_test_fraction = 0.1;
};

struct DirectionStats {
  std::string direction;
  std::uint64_t n = 0;
  std::uint64_t flips = 0;

  double rate() const { return n == 0 ? 0.0 : static_cast<double>(flips) / static_cast<double>(n); }
  double standard_error() const;
};

/// Counts partition the rounds: cm_rounds + em_tested + sifted + discarded = n_rounds.
struct SimulationReport {
  SimulationConfig config;

  std::uint64_t cm_rounds = 0;
  std::uint64_t cm_basis_mismatch = 0;  // Alice measured in a basis Bob did not prepare
  std::vector<DirectionStats> per_direction;

  std::uint64_t em_tested = 0;
  std::uint64_t em_errors = 0;
  std::uint64_t sifted = 0;
  std::uint64_t sifted_errors = 0;  // raw-key mismatches; never disclosed in the protocol
  std::uint64_t discarded = 0;      // encoding rounds whose bit Bob cannot decode

  double em_rate() const;
  double em_standard_error() const;
  /// Flip rate pooled over all directions with matched CM bases.
  double pooled_forward_noise() const;
  std::uint64_t pooled_cm_samples() const;

  friend bool operator==(const SimulationReport& a, const SimulationReport& b);
};

/// Monte-Carlo run of the prepare / attack / encode-or-measure / decode loop.
/// Every round consumes exactly seven uniforms. Throws ConfigError.
SimulationReport run(const SimulationConfig& cfg);

enum class BoundPolicy { RefuseLowerBound, AllowLowerBound };

/// r = 1 - h(Q) - I_E at the empirical forward noise. Q equals the pooled Q_f
/// for the equal-forward noise model and the disclosed encoding-mode rate otherwise.
double estimate_key_rate(const SimulationReport& report, BoundPolicy policy);

}  // namespace twqkd
