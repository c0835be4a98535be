#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fou/config.hpp"
#include "fou/errors.hpp"
#include "fou/experiment.hpp"
#include "fou/io.hpp"
#include "fou/kernels.hpp"
#include "fou/likelihood.hpp"
#include "fou/process.hpp"
#include "fou/rate_scheme.hpp"
#include "fou/special_functions.hpp"
#include "fou/version.hpp"

namespace fou::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Errors that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hurst_range_message(double hurst, bool allow_probe) {
  std::ostringstream msg;
  msg << "H = " << format_double(hurst) << " is outside the supported interval [" << format_double(kMinHurst) << ", "
      << format_double(kMaxHurst) << "]";
  if (allow_probe) msg << " (H = 0.5 is accepted as a boundary probe)";
  return msg.str();
}

void check_hurst(double hurst, bool allow_probe = false) {
  if (allow_probe && hurst == 0.5) return;
  if (!(hurst >= kMinHurst && hurst <= kMaxHurst)) throw UsageError(hurst_range_message(hurst, allow_probe));
}

fs::path resolve_output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "fou_out";
}

// Creates the directory and claims it for this run.
fs::path prepare_output_dir(const std::string& flag, bool force) {
  const fs::path dir = resolve_output_dir(flag);
  const fs::path echo = dir / kResolvedConfigName;
  if (fs::exists(echo) && !force)
    throw UsageError("output directory '" + dir.string() + "' already holds a run (" + kResolvedConfigName +
                     "); pass --force to overwrite");
  fs::create_directories(dir);
  return dir;
}

Config load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
  Config config = path.empty() ? Config{} : Config::load(path);
  for (const std::string& o : overrides) config.apply_override(o);
  return config;
}

ordered_json matrix_json(const Mat2& m) { return ordered_json::array({{m.a, m.b}, {m.c, m.d}}); }

std::string matrix_text(const Mat2& m) {
  return "[[" + format_double(m.a) + ", " + format_double(m.b) + "], [" + format_double(m.c) + ", " +
         format_double(m.d) + "]]";
}

// ---- constants ------------------------------------------------------------

struct ConstantsArgs {
  double hurst = 0.3;
  double alpha = 1.0;
  double mu = 1.0;
  double sigma = 1.0;
  std::string scheme = "scheme_A";
};

int cmd_constants(const ConstantsArgs& a, std::ostream& out) {
  check_hurst(a.hurst, true);
  if (!(a.alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (!(a.sigma > 0.0)) throw UsageError("--sigma must be positive");
  const SchemeKind kind = parse_scheme_kind(a.scheme);
  if (kind == SchemeKind::kCustom) throw UsageError("--scheme must be scheme_A or scheme_B");

  HurstConstant c;
  if (a.hurst == 0.5) {
    // d̄_H and B(3/2−H, 1/2−H) diverge at the boundary; only λ_H stays finite.
    c = {0.5, std::numeric_limits<double>::infinity(), lambda_h(0.5), std::numeric_limits<double>::infinity()};
  } else {
    c = hurst_constants(a.hurst);
  }
  const RateScheme scheme = make_rate_scheme(kind, a.alpha, a.mu, a.hurst);
  const FisherInfo fisher = fisher_info(scheme, a.sigma, c);
  const double gamma0 = a.alpha * a.mu;
  const double var_alpha = 2.0 * a.alpha;
  const double var_gamma = 2.0 * gamma0 * gamma0 / a.alpha;
  const double var_mu = a.sigma * a.sigma * c.lambda / (a.alpha * a.alpha);

  auto finite = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  auto text = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("inf"); };

  out << "H                 = " << format_double(a.hurst) << '\n'
      << "alpha             = " << format_double(a.alpha) << '\n'
      << "mu                = " << format_double(a.mu) << '\n'
      << "sigma             = " << format_double(a.sigma) << '\n'
      << "scheme            = " << to_string(kind) << '\n'
      << "bar_d             = " << text(c.bar_d) << '\n'
      << "lambda            = " << format_double(c.lambda) << '\n'
      << "beta_32_12        = " << text(c.beta_32_12) << '\n'
      << "fisher            = " << matrix_text(fisher.matrix) << '\n'
      << "fisher_inverse    = " << matrix_text(fisher.inverse) << '\n'
      << "eff_var_alpha     = " << format_double(var_alpha) << '\n'
      << "eff_var_gamma     = " << format_double(var_gamma) << '\n'
      << "eff_var_mu        = " << format_double(var_mu) << '\n';
  if (a.hurst == 0.5) out << "note              = boundary probe: bar_d and beta_32_12 diverge at H = 0.5\n";

  ordered_json j;
  j["H"] = a.hurst;
  j["alpha"] = a.alpha;
  j["mu"] = a.mu;
  j["sigma"] = a.sigma;
  j["scheme"] = std::string(to_string(kind));
  j["bar_d"] = finite(c.bar_d);
  j["lambda"] = c.lambda;
  j["beta_32_12"] = finite(c.beta_32_12);
  j["fisher"] = matrix_json(fisher.matrix);
  j["fisher_inverse"] = matrix_json(fisher.inverse);
  j["eff_var_alpha"] = var_alpha;
  j["eff_var_gamma"] = var_gamma;
  j["eff_var_mu"] = var_mu;
  out << j.dump() << '\n';
  return kExitOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<std::size_t> steps;
  std::optional<std::string> init;
  std::string out;
  bool force = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  Config config = load_with_overrides(a.config, a.overrides);
  if (a.seed) config.set("simulate.seed", std::to_string(*a.seed));
  if (a.horizon) config.set("simulate.T", format_double(*a.horizon));
  if (a.steps) config.set("simulate.n", std::to_string(*a.steps));
  if (a.init) config.set("simulate.init", "\"" + *a.init + "\"");

  static const std::set<std::string> known{"params.alpha", "params.mu",  "params.sigma", "params.H",
                                           "params.x0",    "simulate.T", "simulate.n",   "simulate.seed",
                                           "simulate.init", "simulate.max_dt"};
  for (const std::string& key : config.keys())
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "' for simulate");

  FouParams p;
  p.alpha = config.get_double("params.alpha", p.alpha);
  p.mu = config.get_double("params.mu", p.mu);
  p.sigma = config.get_double("params.sigma", p.sigma);
  p.hurst = config.get_double("params.H", p.hurst);
  p.x0 = config.get_double("params.x0", p.x0);
  check_hurst(p.hurst);
  validate(p);
  const double horizon = config.get_double("simulate.T", 10.0);
  const double max_dt = config.get_double("simulate.max_dt", 1.0 / 64.0);
  if (!(horizon > 0.0)) throw UsageError("simulate.T must be positive");
  if (!(max_dt > 0.0)) throw UsageError("simulate.max_dt must be positive");
  const auto default_n = std::max<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(horizon / max_dt - 1e-9)));
  const std::int64_t steps = config.get_int("simulate.n", default_n);
  if (steps < 64) throw UsageError("simulate.n must be >= 64");
  const std::uint64_t seed = config.get_uint("simulate.seed", 1);
  const InitMode init = parse_init_mode(config.get_string("simulate.init", "stationary"));

  config.set("simulate.T", format_double(horizon));
  config.set("simulate.n", std::to_string(steps));
  config.set("simulate.seed", std::to_string(seed));
  config.set("simulate.init", "\"" + std::string(to_string(init)) + "\"");
  config.set("params.alpha", format_double(p.alpha));
  config.set("params.mu", format_double(p.mu));
  config.set("params.sigma", format_double(p.sigma));
  config.set("params.H", format_double(p.hurst));
  config.set("params.x0", format_double(p.x0));

  const GridPath path = simulate_fou(p, horizon, static_cast<std::size_t>(steps), seed, init);
  const fs::path dir = prepare_output_dir(a.out, a.force);
  write_path_csv(dir / "path.csv", path);
  write_text(dir / kResolvedConfigName, config.to_toml());
  out << (dir / "path.csv").string() << '\n';
  return kExitOk;
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string path;
  double hurst = 0.3;
  double sigma = 1.0;
  std::optional<double> mu_hint;
  std::string y_scheme = "innovation";
  int quad_nodes = 64;
  std::string out;
  bool force = false;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  check_hurst(a.hurst);
  if (!(a.sigma > 0.0)) throw UsageError("--sigma must be positive");
  if (a.quad_nodes < 16) throw UsageError("--quad-nodes must be >= 16");
  const YScheme scheme = parse_y_scheme(a.y_scheme);
  const GridPath x = read_path_csv(a.path);

  const KernelContext ctx = make_kernel_context(a.hurst, a.sigma, a.quad_nodes);
  const GridPath y = scheme == YScheme::kInnovation
                         ? compute_y_innovation(ctx, x, InnovationFilter(a.hurst, x.steps()))
                         : compute_y(ctx, x);
  const DriftBasis basis = drift_basis(ctx, x);
  // ĝ does not depend on the centring used for the brackets; without a hint
  // the brackets are centred at the estimate itself.
  ScoreInfo info = score_and_info(basis, y, a.mu_hint.value_or(0.0));
  const Vec2 g_hat = mle_g(info);
  const Vec2 theta = mle_theta(g_hat);
  if (!a.mu_hint) info = score_and_info(basis, y, theta.y);

  ordered_json j;
  j["alpha_hat"] = theta.x;
  j["gamma_hat"] = g_hat.y;
  j["mu_hat"] = theta.y;
  j["det_gamma"] = info.gamma.det();
  j["qv_m"] = info.qv_m;
  j["qv_mn"] = info.qv_mn;
  j["qv_n"] = info.qv_n;
  j["n"] = x.steps();
  j["dt"] = x.dt;
  j["T"] = x.horizon();
  const std::string record = j.dump() + "\n";

  Config echo;
  echo.set("estimate.path", "\"" + fs::absolute(a.path).string() + "\"");
  echo.set("estimate.H", format_double(a.hurst));
  echo.set("estimate.sigma", format_double(a.sigma));
  echo.set("estimate.mu_hint", a.mu_hint ? format_double(*a.mu_hint) : "\"estimate\"");
  echo.set("estimate.y_scheme", "\"" + std::string(to_string(scheme)) + "\"");
  echo.set("estimate.quad_nodes", std::to_string(a.quad_nodes));
  const fs::path dir = prepare_output_dir(a.out, a.force);
  write_text(dir / "estimate.json", record);
  write_text(dir / kResolvedConfigName, echo.to_toml());
  out << record;
  return kExitOk;
}

// ---- mc -------------------------------------------------------------------

struct McArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string out;
  bool force = false;
};

int cmd_mc(const McArgs& a, std::ostream& out, std::ostream& err) {
  Config file = load_with_overrides(a.config, a.overrides);
  if (a.reps) file.set("experiment.reps", std::to_string(*a.reps));
  if (a.seed) file.set("experiment.seed", std::to_string(*a.seed));
  if (a.workers) file.set("experiment.workers", std::to_string(*a.workers));
  if (file.has("params.H")) check_hurst(file.get_double("params.H", 0.3));
  const ExperimentConfig config = experiment_config_from(file);

  const fs::path dir = prepare_output_dir(a.out, a.force);
  const ExperimentReport report = run(config);
  write_text(dir / "per_rep.csv", per_rep_csv(report));
  write_text(dir / "failures.csv", failures_csv(report));
  write_text(dir / "summary.json", summary_json(report));
  write_text(dir / kResolvedConfigName, to_config(config).to_toml());
  out << "rows " << report.rows.size() << ", failures " << report.failures.size() << " -> " << dir.string() << '\n';
  if (report.circuit_broken) {
    err << "fou mc: failure fraction exceeds " << format_double(config.failure_limit) << "; campaign rejected\n";
    return kExitCampaignFailed;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Ornstein-Uhlenbeck simulation and drift estimation", "fou"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Print H-dependent constants and the Fisher information");
  constants->add_option("--H", ca.hurst, "Hurst index");
  constants->add_option("--alpha", ca.alpha, "Mean-reversion rate");
  constants->add_option("--mu", ca.mu, "Long-run mean");
  constants->add_option("--sigma", ca.sigma, "Noise scale");
  constants->add_option("--scheme", ca.scheme, "Rate scheme (scheme_A or scheme_B)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Simulate one path and write it as CSV");
  simulate->add_option("--config", sa.config, "Config file")->check(CLI::ExistingFile);
  simulate->add_option("--set", sa.overrides, "Override section.key=value");
  simulate->add_option("--seed", sa.seed, "Seed");
  simulate->add_option("--T", sa.horizon, "Horizon");
  simulate->add_option("--n", sa.steps, "Number of steps");
  simulate->add_option("--init", sa.init, "fixed or stationary");
  simulate->add_option("--out", sa.out, "Output directory");
  simulate->add_flag("--force", sa.force, "Overwrite an existing run");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Estimate (alpha, mu) from a path CSV");
  estimate->add_option("--path", ea.path, "Path CSV (t,x)")->required()->check(CLI::ExistingFile);
  estimate->add_option("--H", ea.hurst, "Hurst index")->required();
  estimate->add_option("--sigma", ea.sigma, "Noise scale")->required();
  estimate->add_option("--mu-hint", ea.mu_hint, "Centre for the bracket statistics");
  estimate->add_option("--y-scheme", ea.y_scheme, "innovation or midpoint");
  estimate->add_option("--quad-nodes", ea.quad_nodes, "Gauss-Legendre nodes per panel");
  estimate->add_option("--out", ea.out, "Output directory");
  estimate->add_flag("--force", ea.force, "Overwrite an existing run");

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Run a Monte Carlo campaign");
  mc->add_option("--config", ma.config, "Config file")->required()->check(CLI::ExistingFile);
  mc->add_option("--set", ma.overrides, "Override section.key=value");
  mc->add_option("--reps", ma.reps, "Replications per horizon");
  mc->add_option("--seed", ma.seed, "Campaign seed");
  mc->add_option("--workers", ma.workers, "Worker threads");
  mc->add_option("--out", ma.out, "Output directory");
  mc->add_flag("--force", ma.force, "Overwrite an existing run");

  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "constants") return cmd_constants(ca, out);
    if (name == "simulate") return cmd_simulate(sa, out);
    if (name == "estimate") return cmd_estimate(ea, out);
    return cmd_mc(ma, out, err);
  } catch (const UsageError& e) {
    err << "fou " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "fou " << name << ": config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "fou " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "fou " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fou " << name << ": " << e.what() << '\n';
    return kExitCampaignFailed;
  }
}

}  // namespace fou::cli
