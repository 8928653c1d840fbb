#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twqkd/attack_model.hpp"
#include "twqkd/gram_spectra.hpp"

namespace twqkd {

enum class ProtocolId { Simple, Lm05Prime, Lm05PrimeModified, SixState, Lm05Generalized };

enum class Disclosure { None, ModifiedLm05Prime };

/// Whether a reported value of Eve's information is exact or bounds it.
enum class BoundKind { Exact, Upper, Lower };

std::string_view bound_kind_name(BoundKind k);

struct ProtocolSpec {
  ProtocolId id;
  std::string name;
  std::vector<BlochDirection> prep_directions;
  std::vector<Pauli> encoding_ops;
  double p_encode = 0.5;
  double p_control = 0.5;
  Disclosure disclosure = Disclosure::None;
  bool deterministic = false;
  // prep_directions is a finite sample of the equatorial continuum.
  bool equatorial_continuum = false;
};

inline constexpr std::size_t kDefaultEquatorialSamples = 16;

/// simple, lm05-prime, lm05-prime-modified, twqkd-six-state, lm05-generalized.
std::vector<ProtocolSpec> builtin_protocols(std::size_t equatorial_samples = kDefaultEquatorialSamples);
/// Throws DomainError for an unknown name.
ProtocolSpec find_protocol(std::string_view name,
                           std::size_t equatorial_samples = kDefaultEquatorialSamples);

enum class FlipAction { Preserve, Flip, Mixed };

/// Effect of an encoding operation on the eigenstates of k.
FlipAction flip_action(Pauli op, const BlochDirection& k);

/// A preparation direction yields a key bit iff every encoding operation acts
/// deterministically on it and both outcomes occur.
bool direction_decodable(const ProtocolSpec& p, const BlochDirection& k);

/// True iff every preparation direction is decodable.
bool is_deterministic(const ProtocolSpec& p);

/// Relation between forward noise qf and the overall encoding-mode error Q.
struct NoiseModel {
  enum class Mode { EqualForward, IndependentBackward };
  Mode mode = Mode::EqualForward;
  double qb = 0.0;  // backward flip probability (IndependentBackward only)

  static NoiseModel equal_forward() { return {}; }
  static NoiseModel independent_backward(double qb);
  /// "equal-forward" or "qb=<v>"; throws DomainError.
  static NoiseModel parse(std::string_view text);

  double backward_flip() const { return mode == Mode::EqualForward ? 0.0 : qb; }
  /// Q = qf, or qf(1-qb) + qb(1-qf).
  double overall(double qf) const;
  std::string label() const;
};

struct EveInfo {
  double value;
  BoundKind kind;
};

/// Closed-form Eve information for the protocol at forward noise qf.
/// Domains: qf <= 1/2 for h(qf) and h(2qf), qf <= 2/3 for the six-state form.
EveInfo eve_info_bound(const ProtocolSpec& p, double qf);

/// r = 1 - h(q) - ie; not clipped.
double secret_fraction(double q, double ie);

/// qf + (1-qf) h((2-3qf) / (2(1-qf))) for qf in [0, 2/3].
double six_state_closed_form(double qf);

struct SixStatePaths {
  double closed_form;
  double numeric;  // (1/3) sum_w chi_w from Gram spectra of the symmetric attack
};
SixStatePaths six_state_paths(double qf);

/// Six-state information of the symmetric attack; checks the closed form
/// against the Gram-spectra value (1e-9) and returns the closed form.
double six_state_attack_info(double qf);

enum class Curve { Simple, Lm05PrimeUpper, SixStateLower, Lm05Generalized };
inline constexpr Curve kAllCurves[] = {Curve::Simple, Curve::Lm05PrimeUpper, Curve::SixStateLower,
                                       Curve::Lm05Generalized};
std::string_view curve_name(Curve c);
/// Eve information along a curve; DomainError outside its domain.
double curve_eve_info(Curve c, double qf);
double curve_domain_max(Curve c);

struct BoundCurvePoint {
  double qf = 0.0;
  std::optional<double> i_ab;
  std::optional<double> ie_simple;
  std::optional<double> ie_lm05p_upper;
  std::optional<double> ie_six_lower;
  std::optional<double> ie_lm05gen;
  std::optional<double> r_simple;
  std::optional<double> r_lm05p;
  std::optional<double> r_six;
  std::optional<double> r_lm05gen;

  std::optional<double> eve_info(Curve c) const;
  std::optional<double> rate(Curve c) const;
};

/// Points outside a formula's domain carry empty values instead of aborting.
std::vector<BoundCurvePoint> bound_curve(const std::vector<double>& qf_grid, const NoiseModel& noise);

/// Evenly spaced grid of `steps` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

extern const char* const kCurveCsvHeader;
void write_curve_csv(std::ostream& os, const std::vector<BoundCurvePoint>& points);

/// Smallest qf > 0 at which the secret fraction of the curve reaches zero,
/// located by bisection to ~1e-14; nullopt when r stays positive on the domain.
std::optional<double> key_rate_threshold(Curve c, const NoiseModel& noise);

}  // namespace twqkd
