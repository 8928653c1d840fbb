#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "twqkd/cli.hpp"
#include "twqkd/errors.hpp"
#include "twqkd/json_io.hpp"
#include "twqkd/verify.hpp"

using namespace twqkd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path golden(const std::string& name) { return fs::path(TWQKD_GOLDEN_DIR) / name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "twqkd_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<double> column(const std::string& csv, std::size_t col) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(row, cell, ',');
    out.push_back(std::stod(cell));
  }
  return out;
}

}  // namespace

TEST_CASE("curves: golden CSV and thresholds") {
  const Result r = cli({"curves", "--qf-min", "0", "--qf-max", "0.2", "--steps", "21"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(golden("curves_0_0.2_21.csv")));
  CHECK(r.err == slurp(golden("curves_thresholds.txt")));
  const auto qf = column(r.out, 0);
  REQUIRE(qf.size() == 21);
  for (std::size_t i = 0; i < qf.size(); ++i) CHECK(qf[i] == doctest::Approx(0.01 * i));
  const auto ie = column(r.out, 3);
  for (std::size_t i = 0; i < qf.size(); ++i) CHECK(ie[i] == doctest::Approx(oracle::h2(qf[i])).epsilon(1e-11));
  CHECK(r.err.find("threshold lm05p 0.110027864438") != std::string::npos);
}

TEST_CASE("curves: --out writes the file and reports thresholds on stdout") {
  const fs::path p = scratch("curves.csv");
  const Result r = cli({"curves", "--qf-min", "0", "--qf-max", "0.2", "--steps", "21", "--out", p.string()});
  CHECK(r.code == 0);
  CHECK(slurp(p) == slurp(golden("curves_0_0.2_21.csv")));
  CHECK(r.out == slurp(golden("curves_thresholds.txt")));
}

TEST_CASE("curves: usage errors") {
  CHECK(cli({"curves", "--steps", "0"}).code == kExitUsage);
  CHECK(cli({"curves", "--noise", "loud"}).code == kExitUsage);
  CHECK(cli({"curves", "--qf-min", "0.3", "--qf-max", "0.1"}).code == kExitUsage);
  CHECK(cli({"curves", "--steps", "abc"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("simulate: golden report and byte-identical reruns") {
  const std::vector<std::string> args{"simulate", "--protocol", "lm05-prime", "--attack", "symmetric:0.1",
                                      "--rounds", "2000", "--seed", "7"};
  const Result a = cli(args);
  const Result b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == slurp(golden("simulate_lm05-prime_2000_7.json")));
}

TEST_CASE("simulate: identity attack gives no errors") {
  const Result r = cli({"simulate", "--protocol", "lm05-prime", "--attack", "identity", "--rounds", "1000",
                        "--seed", "7"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["em"]["errors"] == 0);
  CHECK(j["config_echo"]["seed"] == 7);
}

TEST_CASE("simulate: control probability and backward noise flags") {
  const Result r = cli({"simulate", "--protocol", "twqkd-six-state", "--attack", "identity", "--rounds", "1000",
                        "--seed", "1", "--pc", "0.2", "--qb", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config_echo"]["p_control"] == 0.2);
  CHECK(j["em"]["q_hat"] == 1.0);
  CHECK(cli({"simulate", "--protocol", "twqkd-six-state", "--rounds", "10", "--seed", "1", "--pc", "1.5"}).code ==
        kExitUsage);
}

TEST_CASE("simulate: attack specs and files") {
  CHECK(cli({"simulate", "--protocol", "nope", "--rounds", "10", "--seed", "1"}).code == kExitUsage);
  CHECK(cli({"simulate", "--protocol", "simple", "--attack", "symmetric:x", "--rounds", "10", "--seed", "1"}).code ==
        kExitUsage);
  CHECK(cli({"simulate", "--protocol", "simple", "--attack", "symmetric:0.9", "--rounds", "10", "--seed", "1"})
            .code == kExitUsage);
  CHECK(cli({"simulate", "--protocol", "simple", "--rounds", "10"}).code == kExitUsage);
  CHECK(cli({"simulate", "--protocol", "simple", "--attack", "file:/does/not/exist", "--rounds", "10", "--seed",
             "1"})
            .code == kExitInputFile);

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"basis\": \"z\", \"entries\": [1, 2]}";
  CHECK(cli({"simulate", "--protocol", "simple", "--attack", "file:" + bad.string(), "--rounds", "10", "--seed",
             "1"})
            .code == kExitInputFile);
  const fs::path garbage = scratch("garbage.json");
  std::ofstream(garbage) << "not json";
  CHECK(cli({"simulate", "--protocol", "simple", "--attack", "file:" + garbage.string(), "--rounds", "10",
             "--seed", "1"})
            .code == kExitInputFile);

  // A file holding the symmetric attack in the x basis reproduces the inline spec.
  const fs::path good = scratch("sym.json");
  std::ofstream(good) << attack_to_json(transform_basis(symmetric_attack(0.1), BlochDirection::x())).dump();
  const Result from_file = cli({"simulate", "--protocol", "twqkd-six-state", "--attack", "file:" + good.string(),
                                "--rounds", "5000", "--seed", "3"});
  const Result inline_spec = cli({"simulate", "--protocol", "twqkd-six-state", "--attack", "symmetric:0.1",
                                  "--rounds", "5000", "--seed", "3"});
  REQUIRE(from_file.code == 0);
  const json a = json::parse(from_file.out), b = json::parse(inline_spec.out);
  CHECK(a["per_direction"] == b["per_direction"]);
  CHECK(a["em"] == b["em"]);
}

TEST_CASE("spectrum command") {
  const Result r = cli({"spectrum", "--ensemble", "simple", "--attack", "symmetric:0.1"});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(golden("spectrum_simple_0.1.json")));
  auto spectrum = [](const std::string& ens, const std::string& attack) {
    const Result res = cli({"spectrum", "--ensemble", ens, "--attack", attack});
    REQUIRE(res.code == 0);
    return json::parse(res.out)["spectrum"].get<std::vector<double>>();
  };
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases{
      {spectrum("simple", "symmetric:0.1"), {0.45, 0.45, 0.05, 0.05}},
      {spectrum("sixstate-block1", "symmetric:0.2"), {0.7, 0.1, 0.1, 0.1}},
      {spectrum("gx", "symmetric:0.2"), {0.4, 0.4, 0.1, 0.1}}};
  for (const auto& [got, want] : cases) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
  CHECK(cli({"spectrum", "--ensemble", "nope"}).code == kExitUsage);
}

TEST_CASE("verify command") {
  const Result r = cli({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const Result hi = cli({"verify", "--qf", "0.6"});
  CHECK(hi.code == 0);
  bool skipped = false;
  std::istringstream lines(hi.out);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("SKIP", 0) == 0 && line.find("generalized-lm05") != std::string::npos) skipped = true;
  CHECK(skipped);
}

TEST_CASE("verify catches a sign error in the Pauli phase table") {
  PauliTable broken = standard_pauli_table();
  for (auto& row : broken)
    for (auto& p : row) p.phase = std::conj(p.phase);
  VerifyOptions opt;
  opt.table = &broken;
  const auto results = run_verification(opt);
  CHECK_FALSE(all_passed(results));
  bool six_state_failed = false;
  for (const auto& c : results)
    if (c.name == "six-state-gram" && c.status == CheckStatus::Fail) six_state_failed = true;
  CHECK(six_state_failed);
}

TEST_CASE("attack JSON round trip") {
  std::mt19937_64 rng(2);
  const AncillaOverlaps a{BlochDirection::general(0.3, 1.1), oracle::overlaps_of(oracle::random_isometry(rng))};
  const AncillaOverlaps b = attack_from_json(json::parse(attack_to_json(a).dump()));
  CHECK(b.reference_basis() == a.reference_basis());
  CHECK((b.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(attack_from_json(json::parse("{\"basis\": \"w\", \"entries\": []}")), FormatError);
  CHECK_THROWS_AS(attack_from_json(json::parse("[]")), FormatError);
}
