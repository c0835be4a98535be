#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fou/config.hpp"
#include "fou/kernels.hpp"
#include "fou/likelihood.hpp"
#include "fou/process.hpp"
#include "fou/rate_scheme.hpp"

namespace fou {

enum class ExperimentKind { kNormalityG, kNormalityTheta, kDegenerateCov, kLan, kQuadvarDecay, kEfficiency };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kNormalityTheta;
  FouParams params{1.0, 2.0, 1.0, 0.3, 0.0};
  InitMode init = InitMode::kStationary;
  std::vector<double> horizons{200.0};
  std::vector<std::size_t> steps;  // per horizon; empty: ceil(T / max_dt)
  double max_dt = 1.0 / 64.0;
  std::size_t reps = 1000;
  SchemeKind scheme = SchemeKind::kA;
  Vec2 u{1.0, 1.0};
  LanForm lan_form = LanForm::kLinear;
  YScheme y_scheme = YScheme::kInnovation;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  int quad_nodes = 64;
  double failure_limit = 0.2;
};

/// Throws ConfigError on invalid values (horizons must be positive and
/// strictly increasing, reps >= 1, workers >= 1, ...).
void validate(const ExperimentConfig& config);

std::size_t steps_for(const ExperimentConfig& config, std::size_t horizon_index);

/// Reads [experiment], [params] and [kernel] sections; unknown keys are
/// rejected. See README for the key list.
ExperimentConfig experiment_config_from(const Config& config);
Config to_config(const ExperimentConfig& config);

// One replication at one horizon.
struct RepRow {
  std::size_t horizon_index = 0;
  double horizon = 0.0;
  std::size_t rep = 0;
  std::size_t steps = 0;
  double alpha_hat = 0.0;
  double gamma_hat = 0.0;
  double mu_hat = 0.0;
  double det_gamma = 0.0;
  double qv_m = 0.0;
  double qv_mn = 0.0;
  double qv_n = 0.0;
  double m_t = 0.0;
  double n_t = 0.0;
  bool fallback = false;  // |α̂| <= 1e−12, θ̂ set to 0
  double lan_lhs = 0.0;   // lan kind only
  double lan_quadratic = 0.0;
};

struct Failure {
  double horizon = 0.0;
  std::size_t rep = 0;
  std::string reason;  // singular_gamma | domain_exit
  std::string message;
};

struct HorizonSummary {
  double horizon = 0.0;
  std::size_t steps = 0;
  std::map<std::string, double> stats;
};

struct Summary {
  ExperimentKind kind = ExperimentKind::kNormalityTheta;
  std::vector<HorizonSummary> horizons;
  std::map<std::string, double> overall;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RepRow> rows;
  std::vector<Failure> failures;
  Summary summary;
  bool circuit_broken = false;  // failure fraction above config.failure_limit
};

/// Runs every (horizon, replication) pair; replication r at horizon h draws
/// from seed derive_seed(derive_seed(seed, h), r), so the report does not
/// depend on the worker count.
ExperimentReport run(const ExperimentConfig& config);

/// Statistics of `rows` for config.kind. Throws DomainError on empty rows.
Summary summarize(const std::vector<RepRow>& rows, const ExperimentConfig& config);

// Documented per-horizon and overall summary keys for a kind.
std::vector<std::string> summary_keys(ExperimentKind kind);
std::vector<std::string> overall_keys(ExperimentKind kind);

std::string per_rep_csv(const ExperimentReport& report);
std::string failures_csv(const ExperimentReport& report);
std::string summary_json(const ExperimentReport& report);

}  // namespace fou
