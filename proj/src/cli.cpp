#include "twqkd/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/json_io.hpp"
#include "twqkd/security_bounds.hpp"
#include "twqkd/simulator.hpp"
#include "twqkd/tightness_search.hpp"
#include "twqkd/verify.hpp"

namespace twqkd {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + what + ": '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("bad number for " + what + ": '" + text + "'");
  return v;
}

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::optional<EnsembleFamily> family_from_name(const std::string& name) {
  for (EnsembleFamily f : {EnsembleFamily::Simple, EnsembleFamily::ModifiedLm05Prime, EnsembleFamily::Lm05Prime,
                           EnsembleFamily::SixState})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

struct Flags {
  // curves
  double qf_min = 0.0;
  double qf_max = 0.5;
  std::size_t steps = 51;
  std::string noise = "equal-forward";
  std::string out_path;
  // simulate
  std::string protocol;
  std::string attack = "identity";
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
  std::optional<double> pc;
  std::optional<double> qb;
  double em_test = 0.1;
  // verify
  std::vector<double> verify_qf;
  // spectrum
  std::string ensemble;
  // search
  std::string family = "lm05-prime-modified";
  double search_qf = 0.1;
  std::size_t candidates = 10000;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << text;
}

int cmd_curves(const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.steps < 1) throw ConfigError("--steps must be at least 1");
  if (!(f.qf_min <= f.qf_max)) throw ConfigError("--qf-min must not exceed --qf-max");
  if (f.qf_min < 0.0 || f.qf_max > 1.0) throw ConfigError("qf range must lie in [0, 1]");
  NoiseModel noise;
  try {
    noise = NoiseModel::parse(f.noise);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream csv;
  write_curve_csv(csv, bound_curve(linear_grid(f.qf_min, f.qf_max, f.steps), noise));
  emit(csv.str(), f.out_path, out);

  std::ostream& report = f.out_path.empty() ? err : out;
  for (Curve c : kAllCurves) {
    const auto q = key_rate_threshold(c, noise);
    report << "threshold " << curve_name(c) << " " << (q ? g12(*q) : std::string("none")) << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  SimulationConfig cfg;
  try {
    cfg.protocol = find_protocol(f.protocol);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  cfg.attack = parse_attack_spec(f.attack);
  if (f.pc) {
    cfg.protocol.p_control = *f.pc;
    cfg.protocol.p_encode = 1.0 - *f.pc;
  }
  if (f.qb) {
    if (*f.qb < 0.0 || *f.qb > 1.0) throw ConfigError("--qb must lie in [0, 1]");
    cfg.noise = NoiseModel::independent_backward(*f.qb);
  }
  cfg.n_rounds = f.rounds;
  cfg.seed = f.seed;
  cfg.em_test_fraction = f.em_test;
  out << report_to_json(run(cfg)).dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  VerifyOptions opt;
  if (!f.verify_qf.empty()) opt.qf_values = f.verify_qf;
  const auto results = run_verification(opt);
  print_results(out, results);
  const bool ok = all_passed(results);
  out << (ok ? "all checks passed" : "verification FAILED") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_spectrum(const Flags& f, std::ostream& out) {
  const Ensemble* ens = nullptr;
  try {
    ens = &builtin_ensemble(f.ensemble);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const AncillaOverlaps a = parse_attack_spec(f.attack);
  const Spectrum s = spectrum_of(a, *ens);
  json j;
  j["ensemble"] = f.ensemble;
  j["attack"] = attack_to_json(a);
  j["gram"] = matrix_to_json(gram_matrix(a, *ens));
  j["spectrum"] = spectrum_to_json(s);
  j["entropy"] = von_neumann_entropy(s);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_search(const Flags& f, std::ostream& out) {
  const auto family = family_from_name(f.family);
  if (!family) throw ConfigError("unknown ensemble family '" + f.family + "'");
  SearchOptions opt;
  opt.family = *family;
  opt.qf = f.search_qf;
  opt.n_candidates = f.candidates;
  opt.seed = f.seed;
  try {
    out << search_report_to_json(search_max_holevo(opt)).dump(2) << "\n";
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return kExitOk;
}

}  // namespace

AncillaOverlaps parse_attack_spec(const std::string& spec) {
  if (spec == "identity") return identity_attack();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown attack '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw FormatError("cannot open attack file " + arg);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError("attack file " + arg + ": " + e.what());
    }
    try {
      return attack_from_json(j);
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError("attack file " + arg + ": " + e.what());
    }
  }
  const double v = parse_number(arg, kind);
  try {
    if (kind == "symmetric") return symmetric_attack(v);
    if (kind == "phase") return phase_covariant_attack(v);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown attack kind '" + kind + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Security analysis toolkit for two-way QKD protocols", "twqkd"};
  app.require_subcommand(1);
  Flags f;

  auto* curves = app.add_subcommand("curves", "Eve-information and secret-fraction curves as CSV");
  curves->add_option("--qf-min", f.qf_min, "Smallest forward noise")->capture_default_str();
  curves->add_option("--qf-max", f.qf_max, "Largest forward noise")->capture_default_str();
  curves->add_option("--steps", f.steps, "Number of grid points")->capture_default_str();
  curves->add_option("--noise", f.noise, "equal-forward | qb=<v>")->capture_default_str();
  curves->add_option("--out", f.out_path, "Write CSV here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo protocol run, JSON report");
  simulate->add_option("--protocol", f.protocol, "Protocol name")->required();
  simulate->add_option("--attack", f.attack, "identity | symmetric:<qf> | phase:<d> | file:<path>")
      ->capture_default_str();
  simulate->add_option("--rounds", f.rounds, "Number of rounds")->required();
  simulate->add_option("--seed", f.seed, "RNG seed")->required();
  simulate->add_option("--pc", f.pc, "Control-mode probability");
  simulate->add_option("--qb", f.qb, "Independent backward flip probability");
  simulate->add_option("--em-test-fraction", f.em_test, "Share of encoding rounds disclosed")
      ->capture_default_str();
  simulate->add_option("--out", f.out_path, "Write JSON here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run the analytic check suite");
  verify->add_option("--qf", f.verify_qf, "Forward noise values (default 0.05 0.1 0.15 0.25)");

  auto* spectrum = app.add_subcommand("spectrum", "Gram matrix, spectrum and entropy of an ensemble");
  spectrum->add_option("--ensemble", f.ensemble, "Builtin ensemble name")->required();
  spectrum->add_option("--attack", f.attack, "Attack spec")->capture_default_str();
  spectrum->add_option("--out", f.out_path, "Write JSON here instead of stdout");

  auto* search = app.add_subcommand("search", "Random search for the largest Holevo quantity");
  search->add_option("--family", f.family, "simple | lm05-prime-modified | lm05-prime | twqkd-six-state")
      ->capture_default_str();
  search->add_option("--qf", f.search_qf, "Forward noise")->capture_default_str();
  search->add_option("--candidates", f.candidates, "Random candidates")->capture_default_str();
  search->add_option("--seed", f.seed, "RNG seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*curves) return cmd_curves(f, out, err);
    std::ostringstream buf;
    std::ostream& sink = f.out_path.empty() ? out : buf;
    int code = kExitUsage;
    if (*simulate) code = cmd_simulate(f, sink);
    if (*verify) code = cmd_verify(f, out);
    if (*spectrum) code = cmd_spectrum(f, sink);
    if (*search) code = cmd_search(f, out);
    if (!f.out_path.empty() && (*simulate || *spectrum)) emit(buf.str(), f.out_path, out);
    return code;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputFile;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace twqkd
