#include "twqkd/security_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "twqkd/errors.hpp"

namespace twqkd {

namespace {

constexpr double kDomainSlack = 1e-12;

void require_range(double qf, double hi, const char* what) {
  if (!(qf >= 0.0 && qf <= hi + kDomainSlack))
    throw DomainError(std::string(what) + ": qf = " + std::to_string(qf) + " outside [0, " +
                      std::to_string(hi) + "]");
}

double h_clamped(double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); }

}  // namespace

std::string_view bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Exact:
      return "exact";
    case BoundKind::Upper:
      return "upper";
    case BoundKind::Lower:
      return "lower";
  }
  return "?";
}

std::vector<ProtocolSpec> builtin_protocols(std::size_t equatorial_samples) {
  if (equatorial_samples == 0) throw DomainError("need at least one equatorial sample");
  const std::vector<Pauli> all_ops{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  std::vector<ProtocolSpec> out;

  out.push_back({ProtocolId::Simple, "simple", {BlochDirection::x(), BlochDirection::z()},
                 {Pauli::I, Pauli::Z}, 0.5, 0.5, Disclosure::None, false, false});
  out.push_back({ProtocolId::Lm05Prime, "lm05-prime", {BlochDirection::x(), BlochDirection::z()},
                 all_ops, 0.5, 0.5, Disclosure::None, true, false});
  out.push_back({ProtocolId::Lm05PrimeModified, "lm05-prime-modified",
                 {BlochDirection::x(), BlochDirection::z()}, all_ops, 0.5, 0.5,
                 Disclosure::ModifiedLm05Prime, true, false});
  out.push_back({ProtocolId::SixState, "twqkd-six-state",
                 {BlochDirection::x(), BlochDirection::y(), BlochDirection::z()}, all_ops, 0.5, 0.5,
                 Disclosure::None, true, false});

  std::vector<BlochDirection> equator;
  for (std::size_t i = 0; i < equatorial_samples; ++i)
    equator.push_back(BlochDirection::equatorial(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                 static_cast<double>(equatorial_samples)));
  out.push_back({ProtocolId::Lm05Generalized, "lm05-generalized", std::move(equator),
                 {Pauli::I, Pauli::Z}, 0.5, 0.5, Disclosure::None, true, true});
  return out;
}

ProtocolSpec find_protocol(std::string_view name, std::size_t equatorial_samples) {
  for (ProtocolSpec& p : builtin_protocols(equatorial_samples))
    if (p.name == name) return p;
  throw DomainError("unknown protocol '" + std::string(name) + "'");
}

FlipAction flip_action(Pauli op, const BlochDirection& k) {
  const auto basis = k.eigenstates();
  const double kept = std::norm(basis[0].dot(pauli_matrix(op) * basis[0]));
  if (std::abs(kept - 1.0) < 1e-9) return FlipAction::Preserve;
  if (kept < 1e-9) return FlipAction::Flip;
  return FlipAction::Mixed;
}

bool direction_decodable(const ProtocolSpec& p, const BlochDirection& k) {
  bool any_keep = false;
  bool any_flip = false;
  for (Pauli op : p.encoding_ops) {
    switch (flip_action(op, k)) {
      case FlipAction::Preserve:
        any_keep = true;
        break;
      case FlipAction::Flip:
        any_flip = true;
        break;
      case FlipAction::Mixed:
        return false;
    }
  }
  return any_keep && any_flip;
}

bool is_deterministic(const ProtocolSpec& p) {
  for (const BlochDirection& k : p.prep_directions)
    if (!direction_decodable(p, k)) return false;
  return !p.prep_directions.empty();
}

NoiseModel NoiseModel::independent_backward(double qb) {
  if (!(qb >= 0.0 && qb <= 1.0)) throw DomainError("backward flip probability outside [0,1]");
  return {Mode::IndependentBackward, qb};
}

NoiseModel NoiseModel::parse(std::string_view text) {
  if (text == "equal-forward") return equal_forward();
  if (text.starts_with("qb=")) {
    const std::string value(text.substr(3));
    char* end = nullptr;
    const double qb = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      throw DomainError("malformed noise spec '" + std::string(text) + "'");
    return independent_backward(qb);
  }
  throw DomainError("noise must be 'equal-forward' or 'qb=<v>', got '" + std::string(text) + "'");
}

double NoiseModel::overall(double qf) const {
  if (mode == Mode::EqualForward) return qf;
  return qf * (1.0 - qb) + qb * (1.0 - qf);
}

std::string NoiseModel::label() const {
  if (mode == Mode::EqualForward) return "equal-forward";
  char buf[64];
  std::snprintf(buf, sizeof buf, "qb=%.12g", qb);
  return buf;
}

double six_state_closed_form(double qf) {
  require_range(qf, 2.0 / 3.0, "six-state bound");
  if (qf >= 2.0 / 3.0) return 2.0 / 3.0;
  return qf + (1.0 - qf) * h_clamped((2.0 - 3.0 * qf) / (2.0 * (1.0 - qf)));
}

SixStatePaths six_state_paths(double qf) {
  const double closed = six_state_closed_form(qf);
  const AncillaOverlaps attack = symmetric_attack(std::min(qf, 2.0 / 3.0));
  return {closed, average_holevo(attack, EnsembleFamily::SixState)};
}

double six_state_attack_info(double qf) {
  const SixStatePaths p = six_state_paths(qf);
  if (std::abs(p.closed_form - p.numeric) > 1e-9)
    throw Error("six-state closed form " + std::to_string(p.closed_form) +
                " disagrees with Gram-spectra value " + std::to_string(p.numeric));
  return p.closed_form;
}

EveInfo eve_info_bound(const ProtocolSpec& p, double qf) {
  switch (p.id) {
    case ProtocolId::Simple:
      require_range(qf, 0.5, p.name.c_str());
      return {h_clamped(qf), BoundKind::Exact};
    case ProtocolId::Lm05Prime:
      require_range(qf, 0.5, p.name.c_str());
      return {h_clamped(qf), BoundKind::Upper};
    case ProtocolId::Lm05PrimeModified:
      require_range(qf, 0.5, p.name.c_str());
      return {h_clamped(qf), BoundKind::Exact};
    case ProtocolId::SixState:
      return {six_state_closed_form(qf), BoundKind::Lower};
    case ProtocolId::Lm05Generalized:
      require_range(qf, 0.5, p.name.c_str());
      return {h_clamped(2.0 * qf), BoundKind::Exact};
  }
  throw DomainError("unknown protocol");
}

double secret_fraction(double q, double ie) { return 1.0 - binary_entropy(q) - ie; }

std::string_view curve_name(Curve c) {
  switch (c) {
    case Curve::Simple:
      return "simple";
    case Curve::Lm05PrimeUpper:
      return "lm05p";
    case Curve::SixStateLower:
      return "six";
    case Curve::Lm05Generalized:
      return "lm05gen";
  }
  return "?";
}

double curve_domain_max(Curve c) { return c == Curve::SixStateLower ? 2.0 / 3.0 : 0.5; }

double curve_eve_info(Curve c, double qf) {
  require_range(qf, curve_domain_max(c), "curve");
  switch (c) {
    case Curve::Simple:
    case Curve::Lm05PrimeUpper:
      return h_clamped(qf);
    case Curve::SixStateLower:
      return six_state_closed_form(qf);
    case Curve::Lm05Generalized:
      return h_clamped(2.0 * qf);
  }
  return 0.0;
}

std::optional<double> BoundCurvePoint::eve_info(Curve c) const {
  switch (c) {
    case Curve::Simple:
      return ie_simple;
    case Curve::Lm05PrimeUpper:
      return ie_lm05p_upper;
    case Curve::SixStateLower:
      return ie_six_lower;
    case Curve::Lm05Generalized:
      return ie_lm05gen;
  }
  return std::nullopt;
}

std::optional<double> BoundCurvePoint::rate(Curve c) const {
  switch (c) {
    case Curve::Simple:
      return r_simple;
    case Curve::Lm05PrimeUpper:
      return r_lm05p;
    case Curve::SixStateLower:
      return r_six;
    case Curve::Lm05Generalized:
      return r_lm05gen;
  }
  return std::nullopt;
}

std::vector<BoundCurvePoint> bound_curve(const std::vector<double>& qf_grid, const NoiseModel& noise) {
  std::vector<BoundCurvePoint> out;
  out.reserve(qf_grid.size());
  for (double qf : qf_grid) {
    BoundCurvePoint p;
    p.qf = qf;
    if (qf >= 0.0 && qf <= 1.0) p.i_ab = 1.0 - binary_entropy(noise.overall(qf));
    auto eval = [&](Curve c, std::optional<double>& ie, std::optional<double>& r) {
      try {
        ie = curve_eve_info(c, qf);
        if (p.i_ab) r = *p.i_ab - *ie;
      } catch (const DomainError&) {
        ie.reset();
        r.reset();
      }
    };
    eval(Curve::Simple, p.ie_simple, p.r_simple);
    eval(Curve::Lm05PrimeUpper, p.ie_lm05p_upper, p.r_lm05p);
    eval(Curve::SixStateLower, p.ie_six_lower, p.r_six);
    eval(Curve::Lm05Generalized, p.ie_lm05gen, p.r_lm05gen);
    out.push_back(p);
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw DomainError("grid needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  grid.back() = hi;
  return grid;
}

const char* const kCurveCsvHeader =
    "qf,i_ab,ie_simple,ie_lm05p_upper,ie_six_lower,ie_lm05gen,r_simple,r_lm05p,r_six,r_lm05gen";

void write_curve_csv(std::ostream& os, const std::vector<BoundCurvePoint>& points) {
  auto cell = [](std::optional<double> v) -> std::string {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", *v);
    return buf;
  };
  os << kCurveCsvHeader << '\n';
  for (const BoundCurvePoint& p : points) {
    os << cell(p.qf) << ',' << cell(p.i_ab) << ',' << cell(p.ie_simple) << ','
       << cell(p.ie_lm05p_upper) << ',' << cell(p.ie_six_lower) << ',' << cell(p.ie_lm05gen) << ','
       << cell(p.r_simple) << ',' << cell(p.r_lm05p) << ',' << cell(p.r_six) << ','
       << cell(p.r_lm05gen) << '\n';
  }
}

std::optional<double> key_rate_threshold(Curve c, const NoiseModel& noise) {
  auto rate = [&](double qf) {
    return 1.0 - binary_entropy(noise.overall(qf)) - curve_eve_info(c, qf);
  };
  const double hi = curve_domain_max(c);
  constexpr int kScan = 2000;
  double prev_q = 0.0;
  double prev_r = rate(0.0);
  if (prev_r <= 0.0) return 0.0;
  for (int i = 1; i <= kScan; ++i) {
    const double q = hi * static_cast<double>(i) / kScan;
    const double r = rate(q);
    if (r <= 0.0) {
      double lo = prev_q;
      double up = q;
      for (int it = 0; it < 200 && up - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + up);
        (rate(mid) > 0.0 ? lo : up) = mid;
      }
      return 0.5 * (lo + up);
    }
    prev_q = q;
    prev_r = r;
  }
  return std::nullopt;
}

}  // namespace twqkd
