#include "twqkd/tightness_search.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>

#include "twqkd/errors.hpp"

namespace twqkd {

namespace {

constexpr double kExceedTol = 1e-9;
constexpr std::size_t kIsotropySamples = 200;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Directions fixing a quadratic function on the sphere: axes, edge midpoints
// and cube corners of [-1, 1]^3.
std::vector<PureQubit> constraint_states() {
  std::vector<PureQubit> out;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Eigen::Vector3d n = Eigen::Vector3d(a, b, c).normalized();
        const BlochDirection k = BlochDirection::from_vector(n);
        out.push_back(k.state(0));
      }
  return out;
}

bool psd(const OverlapMatrix& g) { return hermitian_eigenvalues(ComplexMatrix(g)).min() >= -kPsdTol; }

double max_constraint_residual(const AncillaOverlaps& a) {
  const ValidationReport v = validate(a);
  return std::max({v.normalization_residual[0], v.normalization_residual[1],
                   v.orthogonality_residual});
}

}  // namespace

Eigen::Matrix<double, 16, 1> hermitian_coordinates(const OverlapMatrix& g) {
  Eigen::Matrix<double, 16, 1> p;
  int k = 0;
  for (int i = 0; i < 4; ++i) p(k++) = g(i, i).real();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (g(i, j) + std::conj(g(j, i)));
      p(k++) = std::sqrt(2.0) * avg.real();
      p(k++) = std::sqrt(2.0) * avg.imag();
    }
  return p;
}

OverlapMatrix hermitian_from_coordinates(const Eigen::Matrix<double, 16, 1>& p) {
  OverlapMatrix g = OverlapMatrix::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) g(i, i) = p(k++);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Complex v(kInvSqrt2 * p(k), kInvSqrt2 * p(k + 1));
      k += 2;
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  return g;
}

SweepResult sweep_interference(double qf, const std::vector<double>& x_grid) {
  if (!std::is_sorted(x_grid.begin(), x_grid.end()))
    throw DomainError("sweep_interference: x grid must be ascending");
  SweepResult r;
  const Ensemble mixture = simple_mixture();
  for (double x : x_grid) {
    const AncillaOverlaps a = interference_attack(qf, x);
    r.points.push_back({x, von_neumann_entropy(spectrum_of(a, mixture))});
  }
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    const SweepPoint& prev = r.points[i - 1];
    const SweepPoint& cur = r.points[i];
    if (cur.entropy > prev.entropy + 1e-12) r.non_increasing = false;
    if (cur.x > 0.0 && cur.x > prev.x && !(cur.entropy < prev.entropy)) r.strictly_decreasing = false;
  }
  return r;
}

AttackParameterization::AttackParameterization(double qf)
    : qf_(qf), center_(symmetric_attack(qf).matrix()) {
  // Each row is the linear functional evaluated on the coordinate basis.
  std::vector<std::pair<std::function<double(const OverlapMatrix&)>, double>> rows;
  rows.emplace_back([](const OverlapMatrix& g) { return (g(0, 0) + g(1, 1)).real(); }, 1.0);
  rows.emplace_back([](const OverlapMatrix& g) { return (g(2, 2) + g(3, 3)).real(); }, 1.0);
  rows.emplace_back([](const OverlapMatrix& g) { return (g(0, 2) + g(1, 3)).real(); }, 0.0);
  rows.emplace_back([](const OverlapMatrix& g) { return (g(0, 2) + g(1, 3)).imag(); }, 0.0);
  for (const PureQubit& s : constraint_states()) {
    const Eigen::Vector4cd v = flip_coefficients(BlochDirection::z(), s);
    rows.emplace_back([v](const OverlapMatrix& g) { return std::real(v.dot(g * v)); }, qf);
  }

  constraints_.resize(static_cast<Eigen::Index>(rows.size()), 16);
  targets_.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int k = 0; k < 16; ++k) {
      Eigen::Matrix<double, 16, 1> e = Eigen::Matrix<double, 16, 1>::Zero();
      e(k) = 1.0;
      constraints_(static_cast<Eigen::Index>(r), k) = rows[r].first(hermitian_from_coordinates(e));
    }
    targets_(static_cast<Eigen::Index>(r)) = rows[r].second;
  }
  solver_.setThreshold(1e-10);
  solver_.compute(constraints_);
}

AttackParameterization::Candidate AttackParameterization::candidate(const Params& params) const {
  Eigen::Matrix4cd factor = Eigen::Matrix4cd::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) factor(i, i) = params[static_cast<std::size_t>(k++)];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) {
      factor(i, j) = Complex(params[static_cast<std::size_t>(k)], params[static_cast<std::size_t>(k + 1)]);
      k += 2;
    }
  OverlapMatrix raw = factor * factor.adjoint();
  const double trace = raw.trace().real();
  if (trace > 0.0) raw *= 2.0 / trace;  // feasible overlap matrices have trace 2

  const Eigen::Matrix<double, 16, 1> p0 = hermitian_coordinates(raw);
  const Eigen::VectorXd residual = constraints_ * p0 - targets_;
  const Eigen::Matrix<double, 16, 1> p = p0 - solver_.solve(residual);
  const OverlapMatrix projected = hermitian_from_coordinates(p);

  if (psd(projected)) return {AncillaOverlaps(BlochDirection::z(), projected), true};

  const OverlapMatrix direction = projected - center_;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psd(center_ + mid * direction) ? lo : hi) = mid;
  }
  const double shrink = std::clamp(params[kFactorParams], 0.0, 1.0);
  return {AncillaOverlaps(BlochDirection::z(), center_ + (lo * shrink) * direction), false};
}

AttackParameterization::Params AttackParameterization::sample(Rng& rng) const {
  Params out{};
  for (int i = 0; i < kFactorParams; ++i) {
    // Box-Muller on two uniforms; 1 - u keeps the log argument positive.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    out[static_cast<std::size_t>(i)] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  out[kFactorParams] = 0.5 + 0.5 * rng.uniform();
  return out;
}

SearchReport search_max_holevo(const SearchOptions& options) {
  const double qf = options.qf;
  if (!(qf >= 0.0 && qf <= 0.5)) throw DomainError("search_max_holevo: qf must lie in [0, 1/2]");

  SearchReport report;
  report.family = options.family;
  report.qf = qf;
  report.bound = binary_entropy(qf);
  if (options.family == EnsembleFamily::SixState)
    report.lower_reference = qf + (1.0 - qf) * binary_entropy((2.0 - 3.0 * qf) / (2.0 * (1.0 - qf)));

  bool have_best = false;
  auto consider = [&](const AncillaOverlaps& a) {
    const double chi = average_holevo(a, options.family);
    ++report.n_candidates;
    if (chi > report.bound + kExceedTol) ++report.n_exceeding;
    report.max_constraint_residual = std::max(report.max_constraint_residual, max_constraint_residual(a));
    if (!have_best || chi > report.best_chi) {
      report.best_chi = chi;
      report.best_attack = a;
      have_best = true;
    }
    return chi;
  };

  if (options.include_symmetric) {
    report.symmetric_chi = consider(symmetric_attack(qf));
  } else {
    report.symmetric_chi = average_holevo(symmetric_attack(qf), options.family);
  }

  const AttackParameterization space(qf);
  Rng rng = Rng(options.seed).split(1);
  std::size_t accepted = 0;
  struct Scored {
    double chi;
    AttackParameterization::Params params;
  };
  std::vector<Scored> top;
  for (std::size_t i = 0; i < options.n_candidates; ++i) {
    const AttackParameterization::Params params = space.sample(rng);
    const AttackParameterization::Candidate c = space.candidate(params);
    if (c.accepted_without_shrink) ++accepted;
    const double chi = consider(c.attack);
    report.max_isotropy_spread =
        std::max(report.max_isotropy_spread, disturbance_spread(c.attack, kIsotropySamples));
    top.push_back({chi, params});
    if (top.size() > 4 * options.refine_top + 4) {
      std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(options.refine_top),
                        top.end(), [](const Scored& a, const Scored& b) { return a.chi > b.chi; });
      top.resize(options.refine_top);
    }
  }
  report.acceptance_rate =
      options.n_candidates == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(options.n_candidates);

  std::sort(top.begin(), top.end(), [](const Scored& a, const Scored& b) { return a.chi > b.chi; });
  if (top.size() > options.refine_top) top.resize(options.refine_top);

  // Coordinate descent on the factor parameters of the leading candidates.
  for (Scored& s : top) {
    double step = 0.25;
    for (std::size_t sweep = 0; sweep < options.refine_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < s.params.size(); ++k) {
        for (double sign : {1.0, -1.0}) {
          AttackParameterization::Params trial = s.params;
          trial[k] += sign * step;
          const AttackParameterization::Candidate c = space.candidate(trial);
          const double chi = consider(c.attack);
          if (chi > s.chi) {
            s.chi = chi;
            s.params = trial;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  if (!have_best) throw NoFeasibleCandidate("search_max_holevo: no candidate evaluated");
  report.gap = report.bound - report.best_chi;
  report.symmetric_is_best = report.best_chi - report.symmetric_chi <= 1e-6;
  return report;
}

}  // namespace twqkd
