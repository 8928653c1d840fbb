#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "twqkd/attack_model.hpp"
#include "twqkd/gram_spectra.hpp"
#include "twqkd/simulator.hpp"

namespace twqkd {

struct SweepPoint {
  double x;
  double entropy;  // S(rho^AE) of the {I, Z} mixture, bits
};

struct SweepResult {
  std::vector<SweepPoint> points;
  bool non_increasing = true;
  // Strict decrease between consecutive points with x > 0.
  bool strictly_decreasing = true;
};

/// Entropy of the {I, Z} mixture along interference_attack(qf, x) for an
/// ascending x grid. Throws InfeasibleParameters at the first infeasible x.
SweepResult sweep_interference(double qf, const std::vector<double>& x_grid);

/// Search space of candidate attacks with forward noise qf in every direction.
///
/// A candidate starts as L L^dag for a lower-triangular L (4 real diagonal
/// entries, 6 complex below), is projected onto the affine set fixed by the
/// unitarity conditions and disturbance = qf on 26 directions (exact
/// isotropy, since the disturbance is quadratic in the Bloch vector), and, if
/// that leaves the PSD cone, is pulled back along the segment towards
/// symmetric_attack(qf) to fraction `shrink` of the PSD-feasible length.
class AttackParameterization {
 public:
  static constexpr int kFactorParams = 16;
  using Params = std::array<double, kFactorParams + 1>;  // last entry: shrink in [0, 1]

  explicit AttackParameterization(double qf);

  double qf() const { return qf_; }

  struct Candidate {
    AncillaOverlaps attack;
    bool accepted_without_shrink;
  };
  Candidate candidate(const Params& params) const;

  /// Random factor entries ~ N(0, 1); shrink uniform in [0.5, 1].
  Params sample(Rng& rng) const;

 private:
  double qf_;
  OverlapMatrix center_;
  Eigen::MatrixXd constraints_;
  Eigen::VectorXd targets_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver_;
};

/// Orthonormal real coordinates of a Hermitian 4x4 matrix (Frobenius inner product).
Eigen::Matrix<double, 16, 1> hermitian_coordinates(const OverlapMatrix& g);
OverlapMatrix hermitian_from_coordinates(const Eigen::Matrix<double, 16, 1>& p);

struct SearchOptions {
  EnsembleFamily family = EnsembleFamily::Simple;
  double qf = 0.1;
  std::size_t n_candidates = 10000;
  std::uint64_t seed = 1;
  bool include_symmetric = true;
  std::size_t refine_top = 4;
  std::size_t refine_sweeps = 12;
};

struct SearchReport {
  EnsembleFamily family;
  double qf = 0.0;
  std::size_t n_candidates = 0;  // feasible candidates evaluated, refinement included
  double acceptance_rate = 0.0;  // share of raw samples feasible without shrinking
  double best_chi = 0.0;
  double bound = 0.0;  // h(qf); no candidate may exceed it
  double gap = 0.0;    // bound - best_chi
  std::optional<double> lower_reference;  // six-state closed form, when applicable
  AncillaOverlaps best_attack = identity_attack();
  double symmetric_chi = 0.0;
  bool symmetric_is_best = false;  // within 1e-6 of best_chi
  std::size_t n_exceeding = 0;     // candidates with chi > bound + 1e-9
  double max_constraint_residual = 0.0;
  double max_isotropy_spread = 0.0;
};

/// Sampling plus coordinate-descent refinement; reports the best value found,
/// not a certified maximum. Throws NoFeasibleCandidate if nothing was evaluated.
SearchReport search_max_holevo(const SearchOptions& options);

}  // namespace twqkd
