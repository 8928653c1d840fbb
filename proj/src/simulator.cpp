#include "twqkd/simulator.hpp"

#include <array>
#include <algorithm>
#include <cmath>

#include "twqkd/errors.hpp"

namespace twqkd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

double DirectionStats::standard_error() const {
  if (n == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double SimulationReport::em_rate() const {
  return em_tested == 0 ? 0.0 : static_cast<double>(em_errors) / static_cast<double>(em_tested);
}

double SimulationReport::em_standard_error() const {
  if (em_tested == 0) return 0.0;
  const double p = em_rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(em_tested));
}

std::uint64_t SimulationReport::pooled_cm_samples() const {
  std::uint64_t n = 0;
  for (const DirectionStats& d : per_direction) n += d.n;
  return n;
}

double SimulationReport::pooled_forward_noise() const {
  std::uint64_t flips = 0;
  for (const DirectionStats& d : per_direction) flips += d.flips;
  const std::uint64_t n = pooled_cm_samples();
  return n == 0 ? 0.0 : static_cast<double>(flips) / static_cast<double>(n);
}

bool operator==(const SimulationReport& a, const SimulationReport& b) {
  if (a.per_direction.size() != b.per_direction.size()) return false;
  for (std::size_t i = 0; i < a.per_direction.size(); ++i) {
    const auto& x = a.per_direction[i];
    const auto& y = b.per_direction[i];
    if (x.direction != y.direction || x.n != y.n || x.flips != y.flips) return false;
  }
  return a.config.seed == b.config.seed && a.config.n_rounds == b.config.n_rounds &&
         a.cm_rounds == b.cm_rounds && a.cm_basis_mismatch == b.cm_basis_mismatch &&
         a.em_tested == b.em_tested && a.em_errors == b.em_errors && a.sifted == b.sifted &&
         a.sifted_errors == b.sifted_errors && a.discarded == b.discarded;
}

namespace {

void check_config(const SimulationConfig& cfg) {
  const ProtocolSpec& p = cfg.protocol;
  if (cfg.n_rounds < 1) throw ConfigError("n_rounds must be at least 1");
  if (p.prep_directions.empty() || p.encoding_ops.empty())
    throw ConfigError("protocol needs preparation directions and encoding operations");
  if (!(p.p_control >= 0.0 && p.p_control <= 1.0) || std::abs(p.p_encode + p.p_control - 1.0) > 1e-12)
    throw ConfigError("mode probabilities must lie in [0,1] and sum to 1");
  if (!(cfg.em_test_fraction >= 0.0 && cfg.em_test_fraction <= 1.0))
    throw ConfigError("em_test_fraction must lie in [0,1]");
  if (!(cfg.noise.qb >= 0.0 && cfg.noise.qb <= 1.0))
    throw ConfigError("backward flip probability must lie in [0,1]");
  const ValidationReport v = validate(cfg.attack);
  if (!v.ok()) throw ConfigError("attack is not physical: " + v.summary());
}

// Flip probabilities that depend only on (direction, prepared bit, operation).
struct RoundTables {
  std::vector<std::array<double, 2>> cm_flip;                // [dir][bit]
  std::vector<std::array<std::vector<double>, 2>> em_flip;   // [dir][bit][op]
  std::vector<bool> decodable;                               // [dir]
  std::vector<std::vector<int>> encoded_bit;                 // [dir][op]
};

RoundTables build_tables(const SimulationConfig& cfg) {
  const ProtocolSpec& p = cfg.protocol;
  const AttackIsometry iso = realize_isometry(cfg.attack);
  RoundTables t;
  for (const BlochDirection& k : p.prep_directions) {
    const auto basis = k.eigenstates();
    std::array<double, 2> cm{};
    std::array<std::vector<double>, 2> em;
    for (int b = 0; b < 2; ++b) {
      const Eigen::Matrix2cd rho = iso.reduced_state(basis[b]);
      const Qubit& other = basis[1 - b];
      cm[b] = std::clamp(std::real(other.dot(rho * other)), 0.0, 1.0);
      for (Pauli op : p.encoding_ops) {
        const Eigen::Matrix2cd s = pauli_matrix(op);
        const Eigen::Matrix2cd out = s * rho * s.adjoint();
        // Bob expects basis[b] after a preserving op and basis[1-b] after a flip.
        const Qubit expected = (flip_action(op, k) == FlipAction::Flip) ? basis[1 - b] : basis[b];
        const double stay = std::real(expected.dot(out * expected));
        em[b].push_back(std::clamp(1.0 - stay, 0.0, 1.0));
      }
    }
    t.cm_flip.push_back(cm);
    t.em_flip.push_back(std::move(em));
    t.decodable.push_back(direction_decodable(p, k));
    std::vector<int> bits;
    for (Pauli op : p.encoding_ops) bits.push_back(flip_action(op, k) == FlipAction::Flip ? 1 : 0);
    t.encoded_bit.push_back(std::move(bits));
  }
  return t;
}

std::size_t pick(double u, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
}

}  // namespace

SimulationReport run(const SimulationConfig& cfg) {
  check_config(cfg);
  const RoundTables tables = build_tables(cfg);
  const ProtocolSpec& p = cfg.protocol;
  const std::size_t n_dirs = p.prep_directions.size();
  const std::size_t n_ops = p.encoding_ops.size();
  const double qb = cfg.noise.backward_flip();

  SimulationReport report;
  report.config = cfg;
  for (const BlochDirection& k : p.prep_directions) report.per_direction.push_back({k.label(), 0, 0});

  Rng rng = Rng(cfg.seed).split(0);
  for (std::uint64_t round = 0; round < cfg.n_rounds; ++round) {
    std::array<double, 7> u;
    for (double& x : u) x = rng.uniform();

    const std::size_t dir = pick(u[0], n_dirs);
    const int bit = u[1] < 0.5 ? 0 : 1;
    const bool control = u[2] < p.p_control;

    if (control) {
      ++report.cm_rounds;
      const std::size_t alice_dir = pick(u[3], n_dirs);
      if (alice_dir != dir) {
        ++report.cm_basis_mismatch;
        continue;
      }
      DirectionStats& stats = report.per_direction[dir];
      ++stats.n;
      if (u[4] < tables.cm_flip[dir][bit]) ++stats.flips;
      continue;
    }

    if (!tables.decodable[dir]) {
      ++report.discarded;
      continue;
    }
    const std::size_t op = pick(u[3], n_ops);
    const int encoded = tables.encoded_bit[dir][op];
    bool flipped = (u[4] < tables.em_flip[dir][bit][op]) != (encoded == 1);
    if (u[5] < qb) flipped = !flipped;
    const bool error = (flipped ? 1 : 0) != encoded;
    if (u[6] < cfg.em_test_fraction) {
      ++report.em_tested;
      if (error) ++report.em_errors;
    } else {
      ++report.sifted;
      if (error) ++report.sifted_errors;
    }
  }
  return report;
}

double estimate_key_rate(const SimulationReport& report, BoundPolicy policy) {
  if (report.pooled_cm_samples() == 0)
    throw InsufficientStatistics("no control-mode rounds with matching bases");
  const double qf = report.pooled_forward_noise();
  double q = qf;
  if (report.config.noise.mode == NoiseModel::Mode::IndependentBackward) {
    if (report.em_tested == 0) throw InsufficientStatistics("no disclosed encoding-mode rounds");
    q = report.em_rate();
  }
  const EveInfo ie = eve_info_bound(report.config.protocol, qf);
  if (ie.kind == BoundKind::Lower && policy != BoundPolicy::AllowLowerBound)
    throw LowerBoundRefused(report.config.protocol.name +
                            ": only a lower bound on Eve's information is known");
  return secret_fraction(q, ie.value);
}

}  // namespace twqkd
