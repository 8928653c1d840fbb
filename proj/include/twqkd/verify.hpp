#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twqkd/gram_spectra.hpp"

namespace twqkd {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  std::string claim;  // what the check establishes
  double qf = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyOptions {
  std::vector<double> qf_values{0.05, 0.1, 0.15, 0.25};
  const PauliTable* table = &standard_pauli_table();
};

/// Reference Gram matrices of the two orthogonal six-state blocks, written
/// entry by entry: 1/4 on the diagonal, +-(1-2qf)/4 and +-i(1-2qf)/4 elsewhere.
ComplexMatrix reference_six_state_block(int k, double qf);
/// Reference Gram matrices of the {I, sigma_x} and {I, sigma_y} mixtures.
ComplexMatrix reference_conjugate_pair(Pauli w, double qf);
/// Reference Gram matrix of the {I, Z} mixture with interference x.
ComplexMatrix reference_interference_gram(double qf, double x);

/// lambda_pm = (1 +- sqrt((1-2qf)^2 + 4x^2)) / 4, each twice, descending.
std::vector<double> interference_eigenvalues(double qf, double x);

/// Entropy of the eight-state mixture under the symmetric attack, closed form.
double eight_state_entropy_closed_form(double qf);

std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

void print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace twqkd
