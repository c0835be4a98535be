#include <doctest.h>

#include <json.hpp>

#include "fou/config.hpp"
#include "fou/errors.hpp"
#include "fou/experiment.hpp"

using namespace fou;

namespace {

ExperimentConfig small(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.horizons = {4.0, 8.0};
  c.reps = 10;
  c.seed = 123;
  return c;
}

}  // namespace

TEST_CASE("experiment kind names round-trip") {
  for (ExperimentKind k : {ExperimentKind::kNormalityG, ExperimentKind::kNormalityTheta, ExperimentKind::kDegenerateCov,
                           ExperimentKind::kLan, ExperimentKind::kQuadvarDecay, ExperimentKind::kEfficiency})
    CHECK(parse_experiment_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_experiment_kind("bootstrap"), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c = small(ExperimentKind::kLan);
  CHECK_NOTHROW(validate(c));
  c.horizons = {8.0, 4.0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::kLan);
  c.params.hurst = 0.6;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::kLan);
  c.scheme = SchemeKind::kB;
  c.params.mu = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::kLan);
  c.steps = {256};
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("steps default to the largest grid with dt <= max_dt") {
  ExperimentConfig c = small(ExperimentKind::kLan);
  CHECK(steps_for(c, 0) == 256);
  c.horizons = {200.0};
  CHECK(steps_for(c, 0) == 12800);
  c.steps = {1000};
  CHECK(steps_for(c, 0) == 1000);
}

TEST_CASE("experiment config from file, with unknown keys rejected") {
  const Config file = Config::parse(R"(
[experiment]
kind = "quadvar_decay"
horizons = [25, 50]
reps = 7
seed = 5
workers = 2
u = [0.5, -1]
y_scheme = "midpoint"
[params]
alpha = 2
mu = -1
H = 0.2
)");
  const ExperimentConfig c = experiment_config_from(file);
  CHECK(c.kind == ExperimentKind::kQuadvarDecay);
  CHECK(c.horizons == std::vector<double>{25, 50});
  CHECK(c.reps == 7);
  CHECK(c.workers == 2);
  CHECK(c.u == Vec2{0.5, -1.0});
  CHECK(c.y_scheme == YScheme::kMidpoint);
  CHECK(c.params.alpha == 2.0);
  CHECK(c.params.hurst == 0.2);
  const ExperimentConfig again = experiment_config_from(to_config(c));
  CHECK(to_config(again).to_toml() == to_config(c).to_toml());

  CHECK_THROWS_AS(experiment_config_from(Config::parse("[experiment]\nrepz = 3\n")), ConfigError);
  CHECK_THROWS_AS(experiment_config_from(Config::parse("[experiment]\nreps = 0\n")), ConfigError);
  CHECK_THROWS_AS(experiment_config_from(Config::parse("[experiment]\nscheme = \"scheme_Q\"\n")), ConfigError);
}

TEST_CASE("campaigns are identical across worker counts") {
  ExperimentConfig c = small(ExperimentKind::kLan);
  const ExperimentReport serial = run(c);
  c.workers = 3;
  const ExperimentReport parallel = run(c);
  CHECK(per_rep_csv(serial) == per_rep_csv(parallel));
  CHECK(summary_json(serial) == summary_json(parallel));
  CHECK(serial.rows.size() + serial.failures.size() == 20);
  c.seed = 124;
  CHECK(per_rep_csv(run(c)) != per_rep_csv(serial));
}

TEST_CASE("every documented summary key is present for every kind") {
  for (ExperimentKind k : {ExperimentKind::kNormalityG, ExperimentKind::kNormalityTheta, ExperimentKind::kDegenerateCov,
                           ExperimentKind::kLan, ExperimentKind::kQuadvarDecay, ExperimentKind::kEfficiency}) {
    CAPTURE(to_string(k));
    const ExperimentReport report = run(small(k));
    const auto doc = nlohmann::json::parse(summary_json(report));
    CHECK(doc["kind"] == std::string(to_string(k)));
    for (const std::string& key : overall_keys(k)) CHECK_MESSAGE(doc["overall"].contains(key), key);
    REQUIRE(doc["horizons"].size() == 2);
    for (const auto& h : doc["horizons"])
      for (const std::string& key : summary_keys(k)) CHECK_MESSAGE(h["stats"].contains(key), key);
    CHECK(doc["overall"]["underpowered"] == 1.0);
    CHECK(doc["meta"].contains("git_revision"));
  }
}

TEST_CASE("per-rep CSV layout") {
  const ExperimentReport report = run(small(ExperimentKind::kLan));
  const std::string csv = per_rep_csv(report);
  CHECK(csv.rfind("T,rep,n,alpha_hat,gamma_hat,mu_hat,det_gamma,qv_m,qv_mn,qv_n,m_t,n_t,fallback,lan_lhs,lan_quadratic\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(report.rows.size() + 1));
  CHECK(failures_csv(report).rfind("T,rep,reason,message\n", 0) == 0);
}

TEST_CASE("summaries from synthetic rows") {
  ExperimentConfig c = small(ExperimentKind::kNormalityTheta);
  c.horizons = {100.0};
  CHECK_THROWS_AS(summarize({}, c), DomainError);
  std::vector<RepRow> rows(4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].horizon = 100.0;
    rows[i].rep = i;
    rows[i].alpha_hat = 1.0;
    rows[i].mu_hat = 2.0;
  }
  const Summary s = summarize(rows, c);
  REQUIRE(s.horizons.size() == 1);
  CHECK(s.horizons[0].stats.at("z_alpha_var") == 0.0);
  CHECK(s.horizons[0].stats.at("failures") == 6.0);
  CHECK(s.overall.at("failure_fraction") == doctest::Approx(0.6));
  CHECK(s.overall.at("circuit_broken") == 1.0);
}

TEST_CASE("domain exits are recorded and trip the circuit breaker") {
  ExperimentConfig c = small(ExperimentKind::kLan);
  c.u = {-1e4, 0.0};
  const ExperimentReport report = run(c);
  CHECK(report.rows.empty());
  REQUIRE(report.failures.size() == 20);
  CHECK(report.failures.front().reason == "domain_exit");
  CHECK(report.circuit_broken);
  const auto doc = nlohmann::json::parse(summary_json(report));
  CHECK(doc["failure_reasons"]["domain_exit"] == 20);
  CHECK(doc["overall"]["circuit_broken"] == 1.0);
}
