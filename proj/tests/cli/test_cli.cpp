#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fou/experiment.hpp"
#include "fou/io.hpp"
#include "fou/special_functions.hpp"

namespace fs = std::filesystem;
using fou::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fou");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fou_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json last_json_line(const std::string& text) {
  const auto start = text.rfind('{');
  return nlohmann::json::parse(text.substr(start));
}

}  // namespace

TEST_CASE("constants at the Brownian boundary print lambda = 1") {
  const Result r = invoke({"constants", "--H", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda            = 1\n") != std::string::npos);
  CHECK(last_json_line(r.out)["lambda"] == 1.0);
}

TEST_CASE("constants with scheme A print the diagonal inverse information") {
  const Result r = invoke({"constants", "--H", "0.3", "--alpha", "1.5", "--sigma", "2", "--scheme", "scheme_A"});
  REQUIRE(r.code == 0);
  const auto j = last_json_line(r.out);
  const double lambda = fou::hurst_constants(0.3).lambda;
  CHECK(j["fisher_inverse"][0][0].get<double>() == doctest::Approx(3.0));
  CHECK(j["fisher_inverse"][0][1].get<double>() == 0.0);
  CHECK(j["fisher_inverse"][1][1].get<double>() == doctest::Approx(4.0 * lambda).epsilon(1e-14));
  CHECK(j["eff_var_mu"].get<double>() == doctest::Approx(4.0 * lambda / 2.25).epsilon(1e-14));
}

TEST_CASE("out-of-range H exits 2 naming the interval") {
  const Result r = invoke({"constants", "--H", "0.55"});
  CHECK(r.code == 2);
  CHECK(r.err.find("H") != std::string::npos);
  CHECK(r.err.find("[0.05, 0.45]") != std::string::npos);
  CHECK(invoke({"constants", "--bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("simulate is deterministic and refuses to overwrite") {
  const fs::path dir = scratch("simulate");
  const std::vector<std::string> args{"simulate", "--seed", "7", "--T", "5", "--out", (dir / "a").string()};
  REQUIRE(invoke(args).code == 0);
  CHECK(fs::exists(dir / "a" / "resolved_config.toml"));
  const Result again = invoke(args);
  CHECK(again.code == 2);
  CHECK(again.err.find("--force") != std::string::npos);
  REQUIRE(invoke({"simulate", "--seed", "7", "--T", "5", "--out", (dir / "b").string()}).code == 0);
  CHECK(fou::read_text(dir / "a" / "path.csv") == fou::read_text(dir / "b" / "path.csv"));
  auto forced = args;
  forced.push_back("--force");
  forced[2] = "8";
  REQUIRE(invoke(forced).code == 0);
  CHECK(fou::read_text(dir / "a" / "path.csv") != fou::read_text(dir / "b" / "path.csv"));
  CHECK(invoke({"simulate", "--set", "params.bogus=1", "--out", (dir / "c").string()}).code == 2);
}

TEST_CASE("simulate respects the output-directory environment variable") {
  const fs::path dir = scratch("env");
  ::setenv(fou::cli::kOutputDirEnv, dir.string().c_str(), 1);
  const Result r = invoke({"simulate", "--T", "2"});
  ::unsetenv(fou::cli::kOutputDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "path.csv"));
}

TEST_CASE("simulate then estimate on a near-noiseless path recovers alpha") {
  const fs::path dir = scratch("estimate");
  const fs::path cfg = dir / "sim.toml";
  fou::write_text(cfg, "[params]\nalpha = 1\nmu = 2\nsigma = 1e-4\nH = 0.3\nx0 = 0\n[simulate]\nT = 20\nn = 5120\ninit = \"fixed\"\n");
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--seed", "3", "--out", (dir / "sim").string()}).code == 0);
  const Result r = invoke({"estimate", "--path", (dir / "sim" / "path.csv").string(), "--H", "0.3", "--sigma", "1e-4",
                           "--out", (dir / "est").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"alpha_hat", "gamma_hat", "mu_hat", "det_gamma", "qv_m", "qv_mn", "qv_n", "n", "dt", "T"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(std::abs(j["alpha_hat"].get<double>() - 1.0) < 0.01);
  CHECK(j["n"] == 5120);
  CHECK(j["T"].get<double>() == doctest::Approx(20.0));
  CHECK(fou::read_text(dir / "est" / "estimate.json") == r.out);
  CHECK(invoke({"estimate", "--path", (dir / "sim" / "path.csv").string(), "--H", "0.7", "--sigma", "1"}).code == 2);
}

TEST_CASE("mc smoke run writes every documented key") {
  const fs::path dir = scratch("mc");
  const fs::path cfg = dir / "mc.toml";
  fou::write_text(cfg, "[experiment]\nkind = \"efficiency\"\nhorizons = [5]\nworkers = 2\n[params]\nH = 0.3\n");
  const Result r = invoke({"mc", "--config", cfg.string(), "--reps", "10", "--seed", "4", "--out", (dir / "out").string()});
  REQUIRE(r.code == 0);
  for (const char* name : {"per_rep.csv", "summary.json", "failures.csv", "resolved_config.toml"})
    CHECK_MESSAGE(fs::exists(dir / "out" / name), name);
  const auto doc = nlohmann::json::parse(fou::read_text(dir / "out" / "summary.json"));
  for (const std::string& key : fou::summary_keys(fou::ExperimentKind::kEfficiency))
    CHECK_MESSAGE(doc["horizons"][0]["stats"].contains(key), key);
  const std::string echo = fou::read_text(dir / "out" / "resolved_config.toml");
  CHECK(echo.find("reps = 10") != std::string::npos);
  CHECK(echo.find("seed = 4") != std::string::npos);
}

TEST_CASE("mc exits 1 when the circuit breaker trips and 2 on config errors") {
  const fs::path dir = scratch("mc_fail");
  const fs::path cfg = dir / "mc.toml";
  fou::write_text(cfg, "[experiment]\nkind = \"lan\"\nhorizons = [5]\nu = [-10000, 0]\n");
  const Result r = invoke({"mc", "--config", cfg.string(), "--reps", "5", "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(fs::exists(dir / "out" / "failures.csv"));
  fou::write_text(cfg, "[experiment]\nkind = \"nope\"\n");
  CHECK(invoke({"mc", "--config", cfg.string(), "--out", (dir / "x").string()}).code == 2);
  CHECK(invoke({"mc", "--config", (dir / "missing.toml").string()}).code == 2);
}
