#include "twqkd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "twqkd/attack_model.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/security_bounds.hpp"
#include "twqkd/tightness_search.hpp"

namespace twqkd {

namespace {

const Complex kI{0.0, 1.0};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

struct Check {
  const char* name;
  const char* claim;
  double qf_max;  // checks are skipped above this forward noise
  std::function<std::pair<bool, std::string>(double qf, const PauliTable& table)> body;
};

std::vector<Check> checks() {
  std::vector<Check> out;

  out.push_back({"interference-spectrum",
                 "Gram spectrum of the {I,Z} mixture is {lambda+, lambda-} x2 for x in [0, x_max]",
                 2.0 / 3.0, [](double qf, const PauliTable& t) {
                   const double xmax = max_interference(qf);
                   double worst = 0.0;
                   for (double x : {0.0, 0.5 * xmax, xmax}) {
                     const Spectrum s = spectrum_of(interference_attack(qf, x), simple_mixture(), t);
                     worst = std::max(worst, max_abs_diff(s.eigenvalues(), interference_eigenvalues(qf, x)));
                   }
                   return std::pair{worst <= 1e-10, fmt("max |dlambda| = %.3g", worst)};
                 }});

  out.push_back({"simple-holevo", "symmetric attack gives Eve exactly h(qf) on the {I,Z} encoding", 0.5,
                 [](double qf, const PauliTable& t) {
                   const double chi = holevo(symmetric_attack(qf), simple_conditionals(), t);
                   const double err = std::abs(chi - binary_entropy(qf));
                   return std::pair{err <= 1e-9, fmt("chi = %.12g, |chi - h| = %.3g", chi, err)};
                 }});

  out.push_back({"depolarizing-isotropy", "symmetric attack flips every pure state with probability qf",
                 2.0 / 3.0, [](double qf, const PauliTable&) {
                   const AncillaOverlaps a = symmetric_attack(qf);
                   double worst = 0.0;
                   for (const PureQubit& s : low_discrepancy_states(1000))
                     worst = std::max(worst, std::abs(disturbance(a, s) - qf));
                   return std::pair{worst <= 1e-10, fmt("max |d - qf| = %.3g over 1000 states", worst)};
                 }});

  out.push_back({"six-state-gram",
                 "block Grams match their entry-wise form; spectra {1-1.5qf, 0.5qf x3} and "
                 "{0.5qf x2, 0.5(1-qf) x2}; eight-state and conditional entropies",
                 2.0 / 3.0, [](double qf, const PauliTable& t) {
                   const AncillaOverlaps a = symmetric_attack(qf);
                   double gram_err = 0.0;
                   double spec_err = 0.0;
                   for (int k : {1, 2}) {
                     const ComplexMatrix g = gram_matrix(a, six_state_block(k), t);
                     gram_err = std::max(gram_err, (g - reference_six_state_block(k, qf)).cwiseAbs().maxCoeff());
                     spec_err = std::max(spec_err, max_abs_diff(spectrum_of(a, six_state_block(k), t).eigenvalues(),
                                                                sorted_desc({1 - 1.5 * qf, 0.5 * qf, 0.5 * qf, 0.5 * qf})));
                   }
                   for (Pauli w : {Pauli::X, Pauli::Y}) {
                     const ComplexMatrix g = gram_matrix(a, conjugate_pair_mixture(w), t);
                     gram_err = std::max(gram_err, (g - reference_conjugate_pair(w, qf)).cwiseAbs().maxCoeff());
                     spec_err = std::max(
                         spec_err, max_abs_diff(spectrum_of(a, conjugate_pair_mixture(w), t).eigenvalues(),
                                                sorted_desc({0.5 * qf, 0.5 * qf, 0.5 * (1 - qf), 0.5 * (1 - qf)})));
                   }
                   const double s_mix = von_neumann_entropy(spectrum_of(a, eight_state_mixture(), t));
                   double ent_err = std::abs(s_mix - eight_state_entropy_closed_form(qf));
                   for (Pauli w : {Pauli::X, Pauli::Y, Pauli::Z}) {
                     const double s_w = von_neumann_entropy(spectrum_of(a, four_op_conditionals(w)[0].ensemble, t));
                     ent_err = std::max(ent_err, std::abs(s_w - (1.0 + binary_entropy(qf))));
                   }
                   const bool ok = gram_err <= 1e-12 && spec_err <= 1e-10 && ent_err <= 1e-9;
                   std::ostringstream d;
                   d << "gram " << gram_err << ", spectra " << spec_err << ", entropies " << ent_err;
                   return std::pair{ok, d.str()};
                 }});

  out.push_back({"six-state-closed-form",
                 "(1/3) sum_w chi_w from Gram spectra equals qf + (1-qf) h((2-3qf)/(2(1-qf)))",
                 2.0 / 3.0, [](double qf, const PauliTable& t) {
                   const double numeric = average_holevo(symmetric_attack(qf), EnsembleFamily::SixState, t);
                   const double closed = six_state_closed_form(qf);
                   const double err = std::abs(numeric - closed);
                   return std::pair{err <= 1e-9, fmt("numeric %.12g vs closed %.12g", numeric, closed)};
                 }});

  out.push_back({"modified-tightness",
                 "symmetric attack attains h(qf) for the disclosure-modified four-operation encoding", 0.5,
                 [](double qf, const PauliTable& t) {
                   const double chi = average_holevo(symmetric_attack(qf), EnsembleFamily::ModifiedLm05Prime, t);
                   const double err = std::abs(chi - binary_entropy(qf));
                   return std::pair{err <= 1e-9, fmt("chi = %.12g, |chi - h| = %.3g", chi, err)};
                 }});

  out.push_back({"generalized-lm05",
                 "phase-covariant attack with d = 2qf flips equatorial states with qf and gives h(2qf)", 0.5,
                 [](double qf, const PauliTable& t) {
                   const AncillaOverlaps a = phase_covariant_attack(2.0 * qf);
                   double worst = 0.0;
                   for (int i = 0; i < 16; ++i) {
                     const PureQubit s{std::numbers::pi / 2.0, 2.0 * std::numbers::pi * i / 16.0};
                     worst = std::max(worst, std::abs(disturbance(a, s) - qf));
                   }
                   const double chi = holevo(a, simple_conditionals(), t);
                   const double err = std::abs(chi - binary_entropy(2.0 * qf));
                   const bool ok = worst <= 1e-10 && err <= 1e-9;
                   return std::pair{ok, fmt("max |d - qf| = %.3g, |chi - h(2qf)| = %.3g", worst, err)};
                 }});

  out.push_back({"bound-ordering", "six-state lower bound <= h(qf)", 0.5, [](double qf, const PauliTable&) {
                   const double lower = six_state_closed_form(qf);
                   const double upper = binary_entropy(qf);
                   return std::pair{lower <= upper + 1e-12, fmt("%.12g <= %.12g", lower, upper)};
                 }});

  out.push_back({"interference-monotone",
                 "S(rho^AE) of the {I,Z} mixture decreases in |<e00|e10>| and peaks at 1 + h(qf)", 2.0 / 3.0,
                 [](double qf, const PauliTable&) {
                   const SweepResult r = sweep_interference(qf, linear_grid(0.0, max_interference(qf), 20));
                   const double peak_err = std::abs(r.points.front().entropy - (1.0 + binary_entropy(qf)));
                   const bool ok = r.non_increasing && r.strictly_decreasing && peak_err <= 1e-9;
                   return std::pair{ok, fmt("S(0) - 1 - h = %.3g, monotone = %g", peak_err,
                                            r.non_increasing && r.strictly_decreasing ? 1.0 : 0.0)};
                 }});
  return out;
}

}  // namespace

ComplexMatrix reference_six_state_block(int k, double qf) {
  const Complex a = 1.0 - 2.0 * qf;
  const Complex ia = kI * a;
  ComplexMatrix g(4, 4);
  if (k == 1) {
    g << 1.0, a, -ia, a,  //
        a, 1.0, -ia, a,   //
        ia, ia, 1.0, ia,  //
        a, a, -ia, 1.0;
  } else if (k == 2) {
    g << 1.0, a, ia, -a,   //
        a, 1.0, ia, -a,    //
        -ia, -ia, 1.0, ia, //
        -a, -a, -ia, 1.0;
  } else {
    throw DomainError("block index must be 1 or 2");
  }
  return 0.25 * g;
}

ComplexMatrix reference_conjugate_pair(Pauli w, double qf) {
  const Complex a = 1.0 - 2.0 * qf;
  ComplexMatrix g(4, 4);
  if (w == Pauli::X) {
    g << 1.0, 0.0, 0.0, a,  //
        0.0, 1.0, a, 0.0,   //
        0.0, a, 1.0, 0.0,   //
        a, 0.0, 0.0, 1.0;
    return 0.25 * g;
  }
  if (w == Pauli::Y) {
    g << -kI, 0.0, 0.0, -a,  //
        0.0, -kI, a, 0.0,    //
        0.0, -a, -kI, 0.0,   //
        a, 0.0, 0.0, -kI;
    return (kI / 4.0) * g;
  }
  throw DomainError("reference_conjugate_pair: w must be X or Y");
}

ComplexMatrix reference_interference_gram(double qf, double x) {
  const double a = 1.0 - 2.0 * qf;
  ComplexMatrix g(4, 4);
  g << 1.0, 0.0, a, 2.0 * x,  //
      0.0, 1.0, 2.0 * x, -a,  //
      a, 2.0 * x, 1.0, 0.0,   //
      2.0 * x, -a, 0.0, 1.0;
  return 0.25 * g;
}

std::vector<double> interference_eigenvalues(double qf, double x) {
  const double root = std::sqrt((1.0 - 2.0 * qf) * (1.0 - 2.0 * qf) + 4.0 * x * x);
  const double plus = 0.25 * (1.0 + root);
  const double minus = 0.25 * (1.0 - root);
  return {plus, plus, minus, minus};
}

double eight_state_entropy_closed_form(double qf) {
  auto xlog = [](double v) { return v <= 0.0 ? 0.0 : v * std::log2(v); };
  return 2.0 - 1.5 * xlog(qf) - 0.5 * xlog(2.0 - 3.0 * qf);
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  for (double qf : options.qf_values) {
    for (const Check& c : checks()) {
      CheckResult r{c.name, c.claim, qf, CheckStatus::Skipped, ""};
      if (!(qf >= 0.0 && qf <= c.qf_max)) {
        r.detail = "out of domain (qf <= " + fmt("%.4g", c.qf_max) + ")";
      } else {
        try {
          auto [ok, detail] = c.body(qf, *options.table);
          r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
          r.detail = detail;
        } catch (const std::exception& e) {
          r.status = CheckStatus::Fail;
          r.detail = std::string("error: ") + e.what();
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    const char* tag = r.status == CheckStatus::Pass ? "PASS" : r.status == CheckStatus::Fail ? "FAIL" : "SKIP";
    char head[96];
    std::snprintf(head, sizeof head, "%-4s  qf=%-6.4g  %-22s", tag, r.qf, r.name.c_str());
    os << head << "  " << r.claim << "  [" << r.detail << "]\n";
  }
}

}  // namespace twqkd
