#include "twqkd/gram_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twqkd/errors.hpp"

namespace twqkd {

namespace {

constexpr double kBlockTol = 1e-10;
const Complex kI{0.0, 1.0};

int idx(Pauli p) { return static_cast<int>(p); }

PauliTable make_standard_table() {
  using P = Pauli;
  PauliTable t{};
  for (int a = 0; a < 4; ++a) {
    t[0][a] = {1.0, static_cast<P>(a)};
    t[a][0] = {1.0, static_cast<P>(a)};
    t[a][a] = {1.0, P::I};
  }
  t[idx(P::X)][idx(P::Y)] = {kI, P::Z};
  t[idx(P::Y)][idx(P::X)] = {-kI, P::Z};
  t[idx(P::Y)][idx(P::Z)] = {kI, P::X};
  t[idx(P::Z)][idx(P::Y)] = {-kI, P::X};
  t[idx(P::Z)][idx(P::X)] = {kI, P::Y};
  t[idx(P::X)][idx(P::Z)] = {-kI, P::Y};
  return t;
}

const AncillaOverlaps& in_z(const AncillaOverlaps& a, AncillaOverlaps& storage) {
  if (a.reference_basis().kind() == BlochDirection::Kind::Z) return a;
  storage = transform_basis(a, BlochDirection::z());
  return storage;
}

Ensemble mixture_of(const Conditionals& conditionals) {
  std::vector<JointStateLabel> labels;
  for (const Conditional& c : conditionals)
    for (JointStateLabel l : c.ensemble.labels()) {
      l.weight *= c.probability;
      labels.push_back(l);
    }
  return Ensemble(std::move(labels));
}

}  // namespace

char pauli_name(Pauli p) { return "IXYZ"[idx(p)]; }

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -kI, kI, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

const PauliTable& standard_pauli_table() {
  static const PauliTable table = make_standard_table();
  return table;
}

Ensemble::Ensemble(std::vector<JointStateLabel> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("ensemble must not be empty");
  double total = 0.0;
  for (const JointStateLabel& l : labels_) {
    if (l.prep_bit != 0 && l.prep_bit != 1) throw DomainError("prep_bit must be 0 or 1");
    if (!(l.weight >= 0.0)) throw DomainError("ensemble weights must be non-negative");
    total += l.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("ensemble weights must sum to 1");
}

Ensemble Ensemble::uniform(const std::vector<std::pair<Pauli, int>>& states) {
  std::vector<JointStateLabel> labels;
  const double w = 1.0 / static_cast<double>(states.size());
  for (const auto& [pauli, bit] : states) labels.push_back({bit, pauli, w});
  return Ensemble(std::move(labels));
}

Complex joint_overlap(const AncillaOverlaps& a, const JointStateLabel& s1,
                      const JointStateLabel& s2, const PauliTable& table) {
  AncillaOverlaps storage = a;
  const OverlapMatrix& g = in_z(a, storage).matrix();
  const PauliProduct prod = table[idx(s1.pauli)][idx(s2.pauli)];
  const Eigen::Matrix2cd sigma = pauli_matrix(prod.result);
  // U|b>|e> = sum_j |j>|e_bj>
  Complex sum = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      if (sigma(j, k) == 0.0) continue;
      sum += sigma(j, k) * g(ancilla_index(s1.prep_bit, j), ancilla_index(s2.prep_bit, k));
    }
  return prod.phase * sum;
}

ComplexMatrix gram_matrix(const AncillaOverlaps& a, const Ensemble& e, const PauliTable& table) {
  AncillaOverlaps storage = a;
  const AncillaOverlaps& az = in_z(a, storage);
  const auto& labels = e.labels();
  const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const Complex v = std::sqrt(labels[i].weight * labels[j].weight) *
                        joint_overlap(az, labels[i], labels[j], table);
      g(i, j) = v;
      g(j, i) = (i == j) ? Complex(v.real(), 0.0) : std::conj(v);
    }
  return g;
}

Spectrum spectrum_of(const AncillaOverlaps& a, const Ensemble& e, const PauliTable& table) {
  const ComplexMatrix g = gram_matrix(a, e, table);
  const Eigen::Index n = g.rows();

  // Connected components of the "non-orthogonal" graph.
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int n_components = 0;
  for (Eigen::Index start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<Eigen::Index> stack{start};
    component[start] = n_components;
    while (!stack.empty()) {
      const Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j)
        if (component[j] < 0 && std::abs(g(i, j)) >= kBlockTol) {
          component[j] = n_components;
          stack.push_back(j);
        }
    }
    ++n_components;
  }

  std::vector<double> eigenvalues;
  eigenvalues.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < n_components; ++c) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < n; ++i)
      if (component[i] == c) members.push_back(i);
    const auto m = static_cast<Eigen::Index>(members.size());
    ComplexMatrix block(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) block(i, j) = g(members[i], members[j]);
    const Spectrum s = hermitian_eigenvalues(block);
    eigenvalues.insert(eigenvalues.end(), s.eigenvalues().begin(), s.eigenvalues().end());
  }
  return Spectrum(std::move(eigenvalues));
}

double holevo(const AncillaOverlaps& a, const Conditionals& conditionals, const PauliTable& table) {
  double total_p = 0.0;
  for (const Conditional& c : conditionals) total_p += c.probability;
  if (conditionals.empty() || std::abs(total_p - 1.0) > 1e-12)
    throw DomainError("holevo: conditional probabilities must sum to 1");

  double chi = von_neumann_entropy(spectrum_of(a, mixture_of(conditionals), table));
  for (const Conditional& c : conditionals)
    chi -= c.probability * von_neumann_entropy(spectrum_of(a, c.ensemble, table));
  if (chi < 0.0 && chi >= -1e-9) chi = 0.0;
  return chi;
}

Ensemble simple_mixture() {
  return Ensemble::uniform({{Pauli::I, 0}, {Pauli::I, 1}, {Pauli::Z, 0}, {Pauli::Z, 1}});
}

Conditionals simple_conditionals() {
  return {{0.5, Ensemble::uniform({{Pauli::I, 0}, {Pauli::I, 1}})},
          {0.5, Ensemble::uniform({{Pauli::Z, 0}, {Pauli::Z, 1}})}};
}

Conditionals four_op_conditionals(Pauli w) {
  if (w == Pauli::I) throw DomainError("preparation direction must be X, Y or Z");
  std::vector<std::pair<Pauli, int>> keep;
  std::vector<std::pair<Pauli, int>> flip;
  for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    auto& target = (p == Pauli::I || p == w) ? keep : flip;
    for (int b = 0; b < 2; ++b) target.emplace_back(p, b);
  }
  return {{0.5, Ensemble::uniform(keep)}, {0.5, Ensemble::uniform(flip)}};
}

Conditionals modified_conditionals(Pauli w) {
  if (w != Pauli::X && w != Pauli::Z)
    throw DomainError("modified disclosure is defined for x and z preparation only");
  const Pauli flip = (w == Pauli::X) ? Pauli::Z : Pauli::X;
  return {{0.5, Ensemble::uniform({{Pauli::I, 0}, {Pauli::I, 1}})},
          {0.5, Ensemble::uniform({{flip, 0}, {flip, 1}})}};
}

Ensemble six_state_block(int k) {
  if (k == 1)
    return Ensemble::uniform({{Pauli::I, 0}, {Pauli::X, 1}, {Pauli::Y, 1}, {Pauli::Z, 0}});
  if (k == 2)
    return Ensemble::uniform({{Pauli::I, 1}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 1}});
  throw DomainError("six_state_block: k must be 1 or 2");
}

Ensemble eight_state_mixture() {
  std::vector<std::pair<Pauli, int>> states;
  for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z})
    for (int b = 0; b < 2; ++b) states.emplace_back(p, b);
  return Ensemble::uniform(states);
}

Ensemble conjugate_pair_mixture(Pauli w) {
  return Ensemble::uniform({{Pauli::I, 0}, {Pauli::I, 1}, {w, 0}, {w, 1}});
}

const std::vector<std::pair<std::string, Ensemble>>& builtin_ensembles() {
  static const std::vector<std::pair<std::string, Ensemble>> registry = [] {
    std::vector<std::pair<std::string, Ensemble>> r;
    r.emplace_back("simple", simple_mixture());
    r.emplace_back("simple-cond0", simple_conditionals()[0].ensemble);
    r.emplace_back("simple-cond1", simple_conditionals()[1].ensemble);
    r.emplace_back("gx", conjugate_pair_mixture(Pauli::X));
    r.emplace_back("gy", conjugate_pair_mixture(Pauli::Y));
    r.emplace_back("gz", conjugate_pair_mixture(Pauli::Z));
    r.emplace_back("flip-x", four_op_conditionals(Pauli::X)[1].ensemble);
    r.emplace_back("flip-y", four_op_conditionals(Pauli::Y)[1].ensemble);
    r.emplace_back("flip-z", four_op_conditionals(Pauli::Z)[1].ensemble);
    r.emplace_back("sixstate-block1", six_state_block(1));
    r.emplace_back("sixstate-block2", six_state_block(2));
    r.emplace_back("sixstate-full", eight_state_mixture());
    return r;
  }();
  return registry;
}

const Ensemble& builtin_ensemble(std::string_view name) {
  for (const auto& [n, e] : builtin_ensembles())
    if (n == name) return e;
  throw DomainError("unknown ensemble '" + std::string(name) + "'");
}

std::string_view family_name(EnsembleFamily f) {
  switch (f) {
    case EnsembleFamily::Simple:
      return "simple";
    case EnsembleFamily::ModifiedLm05Prime:
      return "lm05-prime-modified";
    case EnsembleFamily::Lm05Prime:
      return "lm05-prime";
    case EnsembleFamily::SixState:
      return "twqkd-six-state";
  }
  return "?";
}

double average_holevo(const AncillaOverlaps& a, EnsembleFamily family, const PauliTable& table) {
  switch (family) {
    case EnsembleFamily::Simple:
      return holevo(a, simple_conditionals(), table);
    case EnsembleFamily::ModifiedLm05Prime:
      return 0.5 * (holevo(a, modified_conditionals(Pauli::Z), table) +
                    holevo(a, modified_conditionals(Pauli::X), table));
    case EnsembleFamily::Lm05Prime:
      return 0.5 * (holevo(a, four_op_conditionals(Pauli::Z), table) +
                    holevo(a, four_op_conditionals(Pauli::X), table));
    case EnsembleFamily::SixState: {
      double sum = 0.0;
      for (Pauli w : {Pauli::X, Pauli::Y, Pauli::Z}) sum += holevo(a, four_op_conditionals(w), table);
      return sum / 3.0;
    }
  }
  return 0.0;
}

}  // namespace twqkd
