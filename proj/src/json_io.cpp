#include "twqkd/json_io.hpp"

#include "twqkd/errors.hpp"

namespace twqkd {

json basis_to_json(const BlochDirection& k) {
  if (k.kind() == BlochDirection::Kind::General) return {{"theta", k.theta()}, {"phi", k.phi()}};
  return k.label();
}

BlochDirection basis_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "x") return BlochDirection::x();
    if (s == "y") return BlochDirection::y();
    if (s == "z") return BlochDirection::z();
    throw FormatError("unknown basis '" + s + "'");
  }
  if (j.is_object() && j.contains("theta") && j.contains("phi") && j["theta"].is_number() &&
      j["phi"].is_number())
    return BlochDirection::general(j["theta"].get<double>(), j["phi"].get<double>());
  throw FormatError("basis must be \"x\", \"y\", \"z\" or {theta, phi}");
}

json attack_to_json(const AncillaOverlaps& a) {
  json entries = json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) entries.push_back({a(r, c).real(), a(r, c).imag()});
  return {{"basis", basis_to_json(a.reference_basis())}, {"entries", entries}};
}

AncillaOverlaps attack_from_json(const json& j) {
  if (!j.is_object() || !j.contains("basis") || !j.contains("entries"))
    throw FormatError("attack document needs 'basis' and 'entries'");
  const json& e = j["entries"];
  if (!e.is_array() || e.size() != 16) throw FormatError("'entries' must hold 16 complex pairs");
  OverlapMatrix g;
  for (int i = 0; i < 16; ++i) {
    const json& pair = e[static_cast<std::size_t>(i)];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw FormatError("entry " + std::to_string(i) + " is not a [re, im] pair");
    g(i / 4, i % 4) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return {basis_from_json(j["basis"]), g};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json spectrum_to_json(const Spectrum& s) { return s.eigenvalues(); }

json report_to_json(const SimulationReport& r) {
  const SimulationConfig& cfg = r.config;
  json echo = {{"protocol", cfg.protocol.name},
               {"p_control", cfg.protocol.p_control},
               {"noise", cfg.noise.label()},
               {"rounds", cfg.n_rounds},
               {"seed", cfg.seed},
               {"em_test_fraction", cfg.em_test_fraction},
               {"attack", attack_to_json(cfg.attack)}};
  json dirs = json::array();
  for (const DirectionStats& d : r.per_direction)
    dirs.push_back({{"dir", d.direction},
                    {"n", d.n},
                    {"flips", d.flips},
                    {"rate", d.rate()},
                    {"stderr", d.standard_error()}});
  return {{"config_echo", echo},
          {"per_direction", dirs},
          {"em",
           {{"n", r.em_tested},
            {"errors", r.em_errors},
            {"q_hat", r.em_rate()},
            {"stderr", r.em_standard_error()},
            {"raw_key_errors", r.sifted_errors}}},
          {"sifted", r.sifted},
          {"discarded", r.discarded}};
}

json search_report_to_json(const SearchReport& r) {
  json j = {{"family", std::string(family_name(r.family))},
            {"qf", r.qf},
            {"n_candidates", r.n_candidates},
            {"acceptance_rate", r.acceptance_rate},
            {"best_chi", r.best_chi},
            {"bound", r.bound},
            {"gap", r.gap},
            {"best_attack", attack_to_json(r.best_attack)},
            {"symmetric_chi", r.symmetric_chi},
            {"symmetric_is_best", r.symmetric_is_best},
            {"n_exceeding", r.n_exceeding},
            {"max_constraint_residual", r.max_constraint_residual},
            {"max_isotropy_spread", r.max_isotropy_spread}};
  if (r.lower_reference) j["lower_reference"] = *r.lower_reference;
  return j;
}

}  // namespace twqkd
