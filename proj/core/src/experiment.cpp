#include "fou/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <thread>

#include <json.hpp>

#include "fou/errors.hpp"
#include "fou/io.hpp"
#include "fou/random.hpp"
#include "fou/statistics.hpp"
#include "fou/version.hpp"

namespace fou {
namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kNormalityG, "normality_g"},     {ExperimentKind::kNormalityTheta, "normality_theta"},
    {ExperimentKind::kDegenerateCov, "degenerate_cov"}, {ExperimentKind::kLan, "lan"},
    {ExperimentKind::kQuadvarDecay, "quadvar_decay"}, {ExperimentKind::kEfficiency, "efficiency"},
};

std::string join_numbers(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out + "]";
}

// Shared read-only state for one campaign.
struct Campaign {
  const ExperimentConfig& config;
  KernelContext ctx;
  std::vector<FouSimulator> simulators;
  std::unique_ptr<InnovationFilter> filter;
  std::unique_ptr<EtaTable> table;
  std::optional<RateScheme> scheme;
  std::optional<FisherInfo> fisher;
};

struct Outcome {
  std::optional<RepRow> row;
  std::optional<Failure> failure;
};

Outcome run_one(const Campaign& campaign, std::size_t h, std::size_t rep) {
  const ExperimentConfig& config = campaign.config;
  const double horizon = config.horizons[h];
  const std::uint64_t seed = derive_seed(derive_seed(config.seed, h), rep);
  const GridPath x = campaign.simulators[h].simulate(seed, config.init);
  const GridPath y = config.y_scheme == YScheme::kInnovation
                         ? compute_y_innovation(campaign.ctx, x, *campaign.filter)
                         : compute_y(campaign.ctx, x, campaign.table.get());
  const DriftBasis basis = drift_basis(campaign.ctx, x);
  const Vec2 g0 = g_of(config.params);
  const ScoreInfo info = score_and_info(basis, y, config.params.mu, g0);

  Outcome out;
  Vec2 g_hat;
  try {
    g_hat = mle_g(info);
  } catch (const ConditioningError& e) {
    out.failure = Failure{horizon, rep, "singular_gamma", e.what()};
    return out;
  }
  RepRow row;
  row.horizon_index = h;
  row.horizon = horizon;
  row.rep = rep;
  row.steps = x.steps();
  const Vec2 theta = mle_theta(g_hat);
  row.fallback = theta == Vec2{0.0, 0.0} && std::abs(g_hat.x) <= 1e-12;
  row.alpha_hat = theta.x;
  row.gamma_hat = g_hat.y;
  row.mu_hat = theta.y;
  row.det_gamma = info.gamma.det();
  row.qv_m = info.qv_m;
  row.qv_mn = info.qv_mn;
  row.qv_n = info.qv_n;
  row.m_t = *info.m_t;
  row.n_t = *info.n_t;
  if (config.kind == ExperimentKind::kLan) {
    try {
      const LanPair pair = lan_pair(info, *campaign.scheme, *campaign.fisher, config.u, config.lan_form);
      row.lan_lhs = pair.lhs;
      row.lan_quadratic = pair.quadratic;
    } catch (const PreconditionError& e) {
      out.failure = Failure{horizon, rep, "domain_exit", e.what()};
      return out;
    }
  }
  out.row = row;
  return out;
}

template <class F>
std::vector<double> column(const std::vector<const RepRow*>& rows, F&& f) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const RepRow* r : rows) out.push_back(f(*r));
  return out;
}

double mean_abs(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += std::abs(x);
  return sum / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs) {
  return xs.size() < 2 ? 0.0 : std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

void covariance_stats(std::map<std::string, double>& stats, const std::vector<double>& a,
                      const std::vector<double>& b) {
  const bool enough = a.size() >= 2;
  const Mat2 cov = enough ? covariance_matrix(a, b) : Mat2{};
  stats["cov_11"] = cov.a;
  stats["cov_12"] = cov.b;
  stats["cov_22"] = cov.d;
}

void horizon_stats(std::map<std::string, double>& stats, const std::vector<const RepRow*>& rows,
                   const ExperimentConfig& config, double horizon, const HurstConstant& constants) {
  const FouParams& p = config.params;
  const double hurst = p.hurst;
  const double slow = std::pow(horizon, 1.0 - hurst);
  const Vec2 g0 = g_of(p);
  const std::size_t n = rows.size();

  stats["rows"] = static_cast<double>(n);
  stats["failures"] = static_cast<double>(config.reps - std::min(config.reps, n));
  stats["fallbacks"] = static_cast<double>(std::count_if(rows.begin(), rows.end(), [](const RepRow* r) { return r->fallback; }));
  stats["alpha_hat_mean"] = mean(column(rows, [](const RepRow& r) { return r.alpha_hat; }));
  stats["mu_hat_mean"] = mean(column(rows, [](const RepRow& r) { return r.mu_hat; }));
  stats["qv_m_mean"] = mean(column(rows, [](const RepRow& r) { return r.qv_m; }));
  stats["qv_n_mean"] = mean(column(rows, [](const RepRow& r) { return r.qv_n; }));
  auto var_or_zero = [](const std::vector<double>& xs) { return xs.size() >= 2 ? variance(xs) : 0.0; };

  switch (config.kind) {
    case ExperimentKind::kNormalityTheta: {
      const auto z_alpha = column(rows, [&](const RepRow& r) {
        return std::sqrt(horizon / (2.0 * p.alpha)) * (r.alpha_hat - p.alpha);
      });
      const auto z_mu = column(rows, [&](const RepRow& r) {
        return r.alpha_hat * slow / (p.sigma * std::sqrt(constants.lambda)) * (r.mu_hat - p.mu);
      });
      stats["z_alpha_mean"] = mean(z_alpha);
      stats["z_alpha_var"] = var_or_zero(z_alpha);
      stats["z_alpha_ks"] = ks_distance_normal(z_alpha);
      stats["z_mu_mean"] = mean(z_mu);
      stats["z_mu_var"] = var_or_zero(z_mu);
      stats["z_mu_ks"] = ks_distance_normal(z_mu);
      stats["z_corr"] = n >= 2 ? correlation(z_alpha, z_mu) : 0.0;
      stats["ks_critical_1pct"] = 1.63 / std::sqrt(static_cast<double>(n));
      break;
    }
    case ExperimentKind::kNormalityG: {
      const RateScheme scheme = make_rate_scheme(config.scheme, p.alpha, p.mu, hurst);
      const FisherInfo fisher = fisher_info(scheme, p.sigma, constants);
      const Mat2 phi_inv = inverse(scheme.phi(horizon));
      std::vector<double> e1, e2;
      for (const RepRow* r : rows) {
        const Vec2 e = phi_inv * (Vec2{r->alpha_hat, r->gamma_hat} - g0);
        e1.push_back(e.x);
        e2.push_back(e.y);
      }
      covariance_stats(stats, e1, e2);
      const Mat2& target = fisher.inverse;
      stats["target_11"] = target.a;
      stats["target_12"] = target.b;
      stats["target_22"] = target.d;
      stats["max_rel_dev"] = std::max(std::abs(stats["cov_11"] / target.a - 1.0), std::abs(stats["cov_22"] / target.d - 1.0));
      std::vector<double> s1, s2;
      for (std::size_t i = 0; i < e1.size(); ++i) {
        s1.push_back(e1[i] / std::sqrt(target.a));
        s2.push_back(e2[i] / std::sqrt(target.d));
      }
      stats["e1_ks"] = ks_distance_normal(s1);
      stats["e2_ks"] = ks_distance_normal(s2);
      break;
    }
    case ExperimentKind::kDegenerateCov: {
      const double root = std::sqrt(horizon);
      const auto z1 = column(rows, [&](const RepRow& r) { return root * (r.alpha_hat - g0.x); });
      const auto z2 = column(rows, [&](const RepRow& r) { return root * (r.gamma_hat - g0.y); });
      covariance_stats(stats, z1, z2);
      const Mat2 cov{stats["cov_11"], stats["cov_12"], stats["cov_12"], stats["cov_22"]};
      const SymEigen eig = sym_eigen(cov);
      stats["eig_lo"] = eig.lo;
      stats["eig_hi"] = eig.hi;
      stats["eig_ratio"] = eig.hi > 0.0 ? eig.lo / eig.hi : 0.0;
      const Vec2 direction = (1.0 / std::hypot(1.0, p.mu)) * Vec2{1.0, p.mu};
      const double cosine = std::min(1.0, std::abs(dot(direction, eig.hi_vector)));
      stats["angle_deg"] = std::acos(cosine) * 180.0 / std::numbers::pi;
      stats["target_eig_hi"] = 2.0 * p.alpha * (1.0 + p.mu * p.mu);
      break;
    }
    case ExperimentKind::kLan: {
      const RateScheme scheme = make_rate_scheme(config.scheme, p.alpha, p.mu, hurst);
      const FisherInfo fisher = fisher_info(scheme, p.sigma, constants);
      const double uiu = quad_form(config.u, fisher.matrix, config.u);
      const auto lhs = column(rows, [](const RepRow& r) { return r.lan_lhs; });
      const auto quad = column(rows, [](const RepRow& r) { return r.lan_quadratic; });
      const auto rem = column(rows, [](const RepRow& r) { return r.lan_lhs - r.lan_quadratic; });
      stats["lhs_mean"] = mean(lhs);
      stats["lhs_var"] = var_or_zero(lhs);
      stats["quadratic_mean"] = mean(quad);
      stats["quadratic_var"] = var_or_zero(quad);
      stats["remainder_mean"] = mean(rem);
      stats["remainder_abs_mean"] = mean_abs(rem);
      stats["remainder_var"] = var_or_zero(rem);
      stats["target_mean"] = -0.5 * uiu;
      stats["target_var"] = uiu;
      stats["lhs_mean_rel_err"] = std::abs(stats["lhs_mean"] / stats["target_mean"] - 1.0);
      stats["lhs_var_rel_err"] = std::abs(stats["lhs_var"] / uiu - 1.0);
      break;
    }
    case ExperimentKind::kQuadvarDecay: {
      const double target = 1.0 / (2.0 * p.alpha);
      const auto dev = column(rows, [&](const RepRow& r) { return r.qv_m - target; });
      const auto mn = column(rows, [](const RepRow& r) { return r.qv_mn; });
      stats["qv_m_rel_err"] = std::abs(stats["qv_m_mean"] / target - 1.0);
      stats["qv_m_abs_dev_mean"] = mean_abs(dev);
      stats["qv_mn_abs_mean"] = mean_abs(mn);
      stats["qv_mn_abs_se"] = standard_error(column(rows, [](const RepRow& r) { return std::abs(r.qv_mn); }));
      break;
    }
    case ExperimentKind::kEfficiency: {
      const double gamma0 = g0.y;
      struct Risk {
        const char* name;
        std::vector<double> values;
        double bound;
      };
      std::vector<Risk> risks{
          {"alpha", column(rows, [&](const RepRow& r) { return horizon * std::pow(r.alpha_hat - p.alpha, 2); }),
           2.0 * p.alpha},
          {"gamma", column(rows, [&](const RepRow& r) { return horizon * std::pow(r.gamma_hat - gamma0, 2); }),
           2.0 * gamma0 * gamma0 / p.alpha},
          {"mu", column(rows, [&](const RepRow& r) { return slow * slow * std::pow(r.mu_hat - p.mu, 2); }),
           p.sigma * p.sigma * constants.lambda / (p.alpha * p.alpha)},
      };
      for (const Risk& risk : risks) {
        const std::string name(risk.name);
        const double value = mean(risk.values);
        const double se = standard_error(risk.values);
        stats["risk_" + name] = value;
        stats["bound_" + name] = risk.bound;
        stats["ratio_" + name] = risk.bound != 0.0 ? value / risk.bound : 0.0;
        stats["se_" + name] = se;
        stats["z_" + name] = se > 0.0 ? (value - risk.bound) / se : 0.0;
        stats["below_bound_" + name] = se > 0.0 && value < risk.bound - 3.0 * se ? 1.0 : 0.0;
      }
      break;
    }
  }
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [kind, text] : kKindNames)
    if (text == name) return kind;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, text] : kKindNames)
    if (k == kind) return text;
  return "unknown";
}

void validate(const ExperimentConfig& config) {
  try {
    validate(config.params);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(config.params.sigma > 0.0)) throw ConfigError("params.sigma must be positive for estimation");
  if (config.horizons.empty()) throw ConfigError("experiment.horizons must not be empty");
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    if (!(config.horizons[i] > 0.0)) throw ConfigError("experiment.horizons must be positive");
    if (i > 0 && !(config.horizons[i] > config.horizons[i - 1]))
      throw ConfigError("experiment.horizons must be strictly increasing");
  }
  if (!config.steps.empty() && config.steps.size() != config.horizons.size())
    throw ConfigError("experiment.steps must have one entry per horizon");
  for (std::size_t n : config.steps)
    if (n < 64) throw ConfigError("experiment.steps entries must be >= 64");
  if (!(config.max_dt > 0.0)) throw ConfigError("experiment.max_dt must be positive");
  if (config.reps < 1) throw ConfigError("experiment.reps must be >= 1");
  if (config.workers < 1) throw ConfigError("experiment.workers must be >= 1");
  if (!(config.failure_limit >= 0.0 && config.failure_limit <= 1.0))
    throw ConfigError("experiment.failure_limit must lie in [0, 1]");
  if (config.quad_nodes < 16) throw ConfigError("kernel.quad_nodes must be >= 16");
  if (config.scheme == SchemeKind::kCustom) throw ConfigError("experiment.scheme: custom schemes are library-only");
  if (config.scheme == SchemeKind::kB && config.params.mu == 0.0)
    throw ConfigError("experiment.scheme = scheme_B requires params.mu != 0");
}

std::size_t steps_for(const ExperimentConfig& config, std::size_t horizon_index) {
  if (!config.steps.empty()) return config.steps[horizon_index];
  const double horizon = config.horizons[horizon_index];
  const auto n = static_cast<std::size_t>(std::ceil(horizon / config.max_dt - 1e-9));
  return std::max<std::size_t>(n, 64);
}

ExperimentConfig experiment_config_from(const Config& file) {
  static const std::set<std::string> known{
      "experiment.kind",   "experiment.reps",     "experiment.seed",          "experiment.workers",
      "experiment.horizons", "experiment.steps",  "experiment.max_dt",        "experiment.scheme",
      "experiment.u",      "experiment.lan_form", "experiment.y_scheme",      "experiment.init",
      "experiment.failure_limit", "params.alpha", "params.mu",                "params.sigma",
      "params.H",          "params.x0",           "kernel.quad_nodes"};
  for (const std::string& key : file.keys())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  try {
    c.kind = parse_experiment_kind(file.get_string("experiment.kind", std::string(to_string(c.kind))));
    const std::int64_t reps = file.get_int("experiment.reps", static_cast<std::int64_t>(c.reps));
    if (reps < 1) throw ConfigError("experiment.reps must be >= 1");
    c.reps = static_cast<std::size_t>(reps);
    c.seed = file.get_uint("experiment.seed", c.seed);
    const std::int64_t workers = file.get_int("experiment.workers", c.workers);
    if (workers < 1 || workers > 1024) throw ConfigError("experiment.workers must lie in [1, 1024]");
    c.workers = static_cast<unsigned>(workers);
    c.horizons = file.get_doubles("experiment.horizons", c.horizons);
    for (double n : file.get_doubles("experiment.steps", {})) {
      if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("experiment.steps entries must be positive integers");
      c.steps.push_back(static_cast<std::size_t>(n));
    }
    c.max_dt = file.get_double("experiment.max_dt", c.max_dt);
    c.scheme = parse_scheme_kind(file.get_string("experiment.scheme", std::string(to_string(c.scheme))));
    const std::vector<double> u = file.get_doubles("experiment.u", {c.u.x, c.u.y});
    if (u.size() != 2) throw ConfigError("experiment.u must have two entries");
    c.u = {u[0], u[1]};
    const std::string form = file.get_string("experiment.lan_form", "linear");
    if (form == "linear") c.lan_form = LanForm::kLinear;
    else if (form == "natural") c.lan_form = LanForm::kNatural;
    else throw ConfigError("experiment.lan_form must be linear or natural");
    c.y_scheme = parse_y_scheme(file.get_string("experiment.y_scheme", std::string(to_string(c.y_scheme))));
    c.init = parse_init_mode(file.get_string("experiment.init", std::string(to_string(c.init))));
    c.failure_limit = file.get_double("experiment.failure_limit", c.failure_limit);
    c.params.alpha = file.get_double("params.alpha", c.params.alpha);
    c.params.mu = file.get_double("params.mu", c.params.mu);
    c.params.sigma = file.get_double("params.sigma", c.params.sigma);
    c.params.hurst = file.get_double("params.H", c.params.hurst);
    c.params.x0 = file.get_double("params.x0", c.params.x0);
    c.quad_nodes = static_cast<int>(file.get_int("kernel.quad_nodes", c.quad_nodes));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  validate(c);
  return c;
}

Config to_config(const ExperimentConfig& c) {
  Config out;
  out.set("experiment.kind", "\"" + std::string(to_string(c.kind)) + "\"");
  out.set("experiment.reps", std::to_string(c.reps));
  out.set("experiment.seed", std::to_string(c.seed));
  out.set("experiment.workers", std::to_string(c.workers));
  out.set("experiment.horizons", join_numbers(c.horizons));
  std::vector<double> steps;
  for (std::size_t h = 0; h < c.horizons.size(); ++h) steps.push_back(static_cast<double>(steps_for(c, h)));
  out.set("experiment.steps", join_numbers(steps));
  out.set("experiment.max_dt", format_double(c.max_dt));
  out.set("experiment.scheme", "\"" + std::string(to_string(c.scheme)) + "\"");
  out.set("experiment.u", join_numbers({c.u.x, c.u.y}));
  out.set("experiment.lan_form", c.lan_form == LanForm::kLinear ? "\"linear\"" : "\"natural\"");
  out.set("experiment.y_scheme", "\"" + std::string(to_string(c.y_scheme)) + "\"");
  out.set("experiment.init", "\"" + std::string(to_string(c.init)) + "\"");
  out.set("experiment.failure_limit", format_double(c.failure_limit));
  out.set("params.alpha", format_double(c.params.alpha));
  out.set("params.mu", format_double(c.params.mu));
  out.set("params.sigma", format_double(c.params.sigma));
  out.set("params.H", format_double(c.params.hurst));
  out.set("params.x0", format_double(c.params.x0));
  out.set("kernel.quad_nodes", std::to_string(c.quad_nodes));
  return out;
}

ExperimentReport run(const ExperimentConfig& config) {
  validate(config);
  Campaign campaign{config, make_kernel_context(config.params.hurst, config.params.sigma, config.quad_nodes), {}, {}, {}, {}, {}};
  std::size_t n_max = 0;
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    const std::size_t n = steps_for(config, h);
    n_max = std::max(n_max, n);
    campaign.simulators.emplace_back(config.params, config.horizons[h], n);
  }
  if (config.y_scheme == YScheme::kInnovation) {
    campaign.filter = std::make_unique<InnovationFilter>(config.params.hurst, n_max);
  } else {
    campaign.table = std::make_unique<EtaTable>(config.params.hurst, n_max);
  }
  if (config.kind == ExperimentKind::kLan) {
    campaign.scheme = make_rate_scheme(config.scheme, config.params.alpha, config.params.mu, config.params.hurst);
    campaign.fisher = fisher_info(*campaign.scheme, config.params.sigma, campaign.ctx.constants);
  }

  const std::size_t tasks = config.horizons.size() * config.reps;
  std::vector<Outcome> outcomes(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      try {
        outcomes[task] = run_one(campaign, task / config.reps, task % config.reps);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = tasks;
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(config.workers, tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentReport report;
  report.config = config;
  for (Outcome& o : outcomes) {
    if (o.row) report.rows.push_back(*o.row);
    if (o.failure) report.failures.push_back(std::move(*o.failure));
  }
  const double fraction = static_cast<double>(report.failures.size()) / static_cast<double>(tasks);
  report.circuit_broken = fraction > config.failure_limit;
  if (!report.rows.empty()) report.summary = summarize(report.rows, config);
  report.summary.kind = config.kind;
  report.summary.overall["total_failures"] = static_cast<double>(report.failures.size());
  report.summary.overall["failure_fraction"] = fraction;
  report.summary.overall["circuit_broken"] = report.circuit_broken ? 1.0 : 0.0;
  return report;
}

Summary summarize(const std::vector<RepRow>& rows, const ExperimentConfig& config) {
  if (rows.empty()) throw DomainError("summarize: no replication rows");
  const HurstConstant constants = hurst_constants(config.params.hurst);
  Summary summary;
  summary.kind = config.kind;
  std::vector<double> horizons, qv_m_dev, qv_mn_abs;
  std::size_t fallbacks = 0;
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    std::vector<const RepRow*> subset;
    for (const RepRow& r : rows)
      if (r.horizon_index == h) subset.push_back(&r);
    if (subset.empty()) continue;
    HorizonSummary hs;
    hs.horizon = config.horizons[h];
    hs.steps = subset.front()->steps;
    horizon_stats(hs.stats, subset, config, hs.horizon, constants);
    fallbacks += static_cast<std::size_t>(hs.stats["fallbacks"]);
    if (config.kind == ExperimentKind::kQuadvarDecay) {
      horizons.push_back(hs.horizon);
      qv_m_dev.push_back(hs.stats["qv_m_abs_dev_mean"]);
      qv_mn_abs.push_back(hs.stats["qv_mn_abs_mean"]);
    }
    summary.horizons.push_back(std::move(hs));
  }
  auto& overall = summary.overall;
  overall["total_rows"] = static_cast<double>(rows.size());
  overall["fallback_count"] = static_cast<double>(fallbacks);
  overall["underpowered"] = config.reps < 100 ? 1.0 : 0.0;
  overall["total_failures"] = static_cast<double>(config.reps * config.horizons.size() - rows.size());
  overall["failure_fraction"] = overall["total_failures"] / static_cast<double>(config.reps * config.horizons.size());
  overall["circuit_broken"] = overall["failure_fraction"] > config.failure_limit ? 1.0 : 0.0;
  if (config.kind == ExperimentKind::kQuadvarDecay) {
    bool decreasing = true;
    for (std::size_t i = 1; i < qv_mn_abs.size(); ++i) decreasing = decreasing && qv_mn_abs[i] < qv_mn_abs[i - 1];
    overall["qv_mn_strictly_decreasing"] = decreasing ? 1.0 : 0.0;
    const bool fit = horizons.size() >= 2;
    overall["qv_m_abs_dev_slope"] = fit ? log_log_slope(horizons, qv_m_dev) : 0.0;
    overall["qv_mn_abs_slope"] = fit ? log_log_slope(horizons, qv_mn_abs) : 0.0;
  }
  return summary;
}

std::vector<std::string> summary_keys(ExperimentKind kind) {
  std::vector<std::string> keys{"rows", "failures", "fallbacks", "alpha_hat_mean", "mu_hat_mean", "qv_m_mean", "qv_n_mean"};
  std::vector<std::string> extra;
  switch (kind) {
    case ExperimentKind::kNormalityTheta:
      extra = {"z_alpha_mean", "z_alpha_var", "z_alpha_ks", "z_mu_mean", "z_mu_var", "z_mu_ks", "z_corr", "ks_critical_1pct"};
      break;
    case ExperimentKind::kNormalityG:
      extra = {"cov_11", "cov_12", "cov_22", "target_11", "target_12", "target_22", "max_rel_dev", "e1_ks", "e2_ks"};
      break;
    case ExperimentKind::kDegenerateCov:
      extra = {"cov_11", "cov_12", "cov_22", "eig_lo", "eig_hi", "eig_ratio", "angle_deg", "target_eig_hi"};
      break;
    case ExperimentKind::kLan:
      extra = {"lhs_mean", "lhs_var", "quadratic_mean", "quadratic_var", "remainder_mean", "remainder_abs_mean",
               "remainder_var", "target_mean", "target_var", "lhs_mean_rel_err", "lhs_var_rel_err"};
      break;
    case ExperimentKind::kQuadvarDecay:
      extra = {"qv_m_rel_err", "qv_m_abs_dev_mean", "qv_mn_abs_mean", "qv_mn_abs_se"};
      break;
    case ExperimentKind::kEfficiency:
      for (const char* name : {"alpha", "gamma", "mu"})
        for (const char* stat : {"risk_", "bound_", "ratio_", "se_", "z_", "below_bound_"}) extra.push_back(std::string(stat) + name);
      break;
  }
  keys.insert(keys.end(), extra.begin(), extra.end());
  return keys;
}

std::vector<std::string> overall_keys(ExperimentKind kind) {
  std::vector<std::string> keys{"total_rows", "total_failures", "failure_fraction", "fallback_count", "underpowered", "circuit_broken"};
  if (kind == ExperimentKind::kQuadvarDecay) {
    keys.insert(keys.end(), {"qv_mn_strictly_decreasing", "qv_m_abs_dev_slope", "qv_mn_abs_slope"});
  }
  return keys;
}

std::string per_rep_csv(const ExperimentReport& report) {
  const bool lan = report.config.kind == ExperimentKind::kLan;
  std::string out = "T,rep,n,alpha_hat,gamma_hat,mu_hat,det_gamma,qv_m,qv_mn,qv_n,m_t,n_t,fallback";
  out += lan ? ",lan_lhs,lan_quadratic\n" : "\n";
  for (const RepRow& r : report.rows) {
    out += format_double(r.horizon) + ',' + std::to_string(r.rep) + ',' + std::to_string(r.steps);
    for (double v : {r.alpha_hat, r.gamma_hat, r.mu_hat, r.det_gamma, r.qv_m, r.qv_mn, r.qv_n, r.m_t, r.n_t})
      out += ',' + format_double(v);
    out += r.fallback ? ",1" : ",0";
    if (lan) out += ',' + format_double(r.lan_lhs) + ',' + format_double(r.lan_quadratic);
    out += '\n';
  }
  return out;
}

std::string failures_csv(const ExperimentReport& report) {
  std::string out = "T,rep,reason,message\n";
  for (const Failure& f : report.failures) {
    std::string message = f.message;
    std::replace(message.begin(), message.end(), '"', '\'');
    out += format_double(f.horizon) + ',' + std::to_string(f.rep) + ',' + f.reason + ",\"" + message + "\"\n";
  }
  return out;
}

std::string summary_json(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["kind"] = std::string(to_string(report.config.kind));
  ordered_json overall = ordered_json::object();
  for (const auto& [k, v] : report.summary.overall) overall[k] = v;
  doc["overall"] = overall;
  ordered_json horizons = ordered_json::array();
  for (const HorizonSummary& hs : report.summary.horizons) {
    ordered_json entry;
    entry["T"] = hs.horizon;
    entry["n"] = hs.steps;
    ordered_json stats = ordered_json::object();
    for (const auto& [k, v] : hs.stats) stats[k] = v;
    entry["stats"] = stats;
    horizons.push_back(entry);
  }
  doc["horizons"] = horizons;
  ordered_json failures = ordered_json::object();
  for (const Failure& f : report.failures) failures[f.reason] = failures.value(f.reason, 0) + 1;
  doc["failure_reasons"] = failures;
  ordered_json meta;
  meta["version"] = std::string(version());
  meta["git_revision"] = std::string(git_revision());
  // Worker count is left out so reports match across schedules.
  Config echo = to_config(report.config);
  echo.erase("experiment.workers");
  meta["config"] = echo.to_toml();
  doc["meta"] = meta;
  return doc.dump(2) + "\n";
}

}  // namespace fou
