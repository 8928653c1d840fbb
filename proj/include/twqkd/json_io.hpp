#pragma once

#include <string>

#include "json.hpp"
#include "twqkd/attack_model.hpp"
#include "twqkd/simulator.hpp"
#include "twqkd/tightness_search.hpp"

namespace twqkd {

using json = nlohmann::json;

// Basis: "x" | "y" | "z" | {"theta": t, "phi": p}.
json basis_to_json(const BlochDirection& k);
BlochDirection basis_from_json(const json& j);

/// {"basis": ..., "entries": [[re, im] x 16]} row-major over 00, 01, 10, 11.
json attack_to_json(const AncillaOverlaps& a);
/// Throws FormatError on malformed documents.
AncillaOverlaps attack_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& m);
json spectrum_to_json(const Spectrum& s);

/// {config_echo, per_direction: [{dir, n, flips, rate, stderr}],
///  em: {n, errors, q_hat, stderr, raw_key_errors}, sifted, discarded}
json report_to_json(const SimulationReport& r);

/// {family, qf, n_candidates, acceptance_rate, best_chi, bound, gap, best_attack, ...}
json search_report_to_json(const SearchReport& r);

}  // namespace twqkd
