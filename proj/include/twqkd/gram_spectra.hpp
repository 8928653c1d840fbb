#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twqkd/attack_model.hpp"
#include "twqkd/math_core.hpp"

namespace twqkd {

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_name(Pauli p);
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// sigma_a sigma_b = phase * sigma_result
struct PauliProduct {
  Complex phase;
  Pauli result;
};
using PauliTable = std::array<std::array<PauliProduct, 4>, 4>;

/// Products under the convention sigma_x sigma_y = i sigma_z.
const PauliTable& standard_pauli_table();

/// sigma_pauli U |prep_bit>_z |e>, carried with its mixture weight.
struct JointStateLabel {
  int prep_bit = 0;
  Pauli pauli = Pauli::I;
  double weight = 0.0;
};

/// Non-empty list of labelled pure states whose weights sum to 1 (within 1e-12).
class Ensemble {
 public:
  explicit Ensemble(std::vector<JointStateLabel> labels);

  const std::vector<JointStateLabel>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  /// Equal-weight ensemble over the given (pauli, bit) pairs.
  static Ensemble uniform(const std::vector<std::pair<Pauli, int>>& states);

 private:
  std::vector<JointStateLabel> labels_;
};

/// <b1|<e| U^dag sigma_w1 sigma_w2 U |b2>|e>, unweighted.
Complex joint_overlap(const AncillaOverlaps& a, const JointStateLabel& s1,
                      const JointStateLabel& s2,
                      const PauliTable& table = standard_pauli_table());

/// G_ij = sqrt(p_i p_j) <phi_i|phi_j>
ComplexMatrix gram_matrix(const AncillaOverlaps& a, const Ensemble& e,
                          const PauliTable& table = standard_pauli_table());

/// Spectrum of the ensemble's density operator. Blocks of mutually orthogonal
/// states (all cross overlaps below 1e-10) are diagonalized separately.
Spectrum spectrum_of(const AncillaOverlaps& a, const Ensemble& e,
                     const PauliTable& table = standard_pauli_table());

/// One letter of a classical alphabet: its prior and the conditional ensemble.
struct Conditional {
  double probability;
  Ensemble ensemble;
};
using Conditionals = std::vector<Conditional>;

/// S(sum_b p_b rho_b) - sum_b p_b S(rho_b), clipped at 0 from -1e-9.
double holevo(const AncillaOverlaps& a, const Conditionals& conditionals,
              const PauliTable& table = standard_pauli_table());

// Ensembles of the protocols. Encoded bit 0 maps to the operations that leave
// the prepared state unchanged.

/// {I, Z} on both preparation bits: the mixture analysed for the {I, Z} protocol.
Ensemble simple_mixture();
/// rho^{AE|0} = U(I/2 (x) |e><e|)U^dag vs its sigma_z conjugate.
Conditionals simple_conditionals();
/// Four-operation encoding for preparation direction w in {X, Y, Z}:
/// bit 0 = {I, sigma_w}, bit 1 = the remaining two operations.
Conditionals four_op_conditionals(Pauli w);
/// Disclosure-modified variant for w in {X, Z}: {I} against {sigma_w'} with
/// w' = z for w = x and w' = x for w = z.
Conditionals modified_conditionals(Pauli w);

/// Orthogonal four-state blocks of the eight-state mixture (k = 1 or 2).
Ensemble six_state_block(int k);
/// All eight states sigma_w U|b>|e>, weight 1/8 each.
Ensemble eight_state_mixture();
/// {I, sigma_w} on both preparation bits, weight 1/4 each.
Ensemble conjugate_pair_mixture(Pauli w);

/// Named ensembles exposed through the CLI.
const std::vector<std::pair<std::string, Ensemble>>& builtin_ensembles();
/// Throws DomainError for an unknown name.
const Ensemble& builtin_ensemble(std::string_view name);

enum class EnsembleFamily { Simple, ModifiedLm05Prime, Lm05Prime, SixState };

std::string_view family_name(EnsembleFamily f);

/// Eve's Holevo information averaged over the preparation directions of the family:
/// Simple -> chi; ModifiedLm05Prime -> (chi'_z + chi'_x)/2;
/// Lm05Prime -> (chi_z + chi_x)/2; SixState -> (chi_x + chi_y + chi_z)/3.
double average_holevo(const AncillaOverlaps& a, EnsembleFamily family,
                      const PauliTable& table = standard_pauli_table());

}  // namespace twqkd
