#include "fou/process.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fou/errors.hpp"
#include "fou/special_functions.hpp"

namespace fou {
namespace {

// e^{−x} ∫_0^x e^z z^p dz by its convergent series; x <= 40 only.
double damped_power_integral(double p, double x) {
  if (x == 0.0) return 0.0;
  double u = std::exp(-x + (p + 1.0) * std::log(x));
  double sum = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double term = u / (p + 1.0 + k);
    sum += term;
    if (k > x && term < 1e-18 * sum) break;
    u *= x / (k + 1.0);
  }
  return sum;
}

constexpr double kAsymptoticSwitch = 40.0;

}  // namespace

void validate(const FouParams& params) {
  if (!(params.alpha > 0.0)) throw DomainError("FouParams: alpha must be positive (ergodicity)");
  if (!(params.sigma >= 0.0)) throw DomainError("FouParams: sigma must be non-negative");
  if (!(params.hurst >= kMinHurst && params.hurst <= kMaxHurst))
    throw DomainError("FouParams: H must lie in [" + std::to_string(kMinHurst) + ", " +
                      std::to_string(kMaxHurst) + "]");
  if (!std::isfinite(params.mu) || !std::isfinite(params.x0))
    throw DomainError("FouParams: mu and x0 must be finite");
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "fixed" || name == "fixed_x0") return InitMode::kFixed;
  if (name == "stationary") return InitMode::kStationary;
  throw DomainError("unknown init mode '" + std::string(name) + "' (expected fixed_x0 or stationary)");
}

std::string_view to_string(InitMode mode) {
  return mode == InitMode::kFixed ? "fixed_x0" : "stationary";
}

double stationary_cov(const FouParams& params, double t) {
  validate(params);
  const double p = 2.0 * params.hurst;
  const double x = params.alpha * std::abs(t);
  const double s2 = params.sigma * params.sigma;
  const double scale = s2 / std::pow(params.alpha, p);
  if (x == 0.0) return 0.5 * scale * gamma_fn(p + 1.0);
  if (x <= kAsymptoticSwitch) {
    const double bracket = upper_gamma_scaled(p + 1.0, x) + damped_power_integral(p, x) +
                           std::exp(-x + log_gamma(p + 1.0)) - 2.0 * std::pow(x, p);
    return 0.25 * scale * bracket;
  }
  // (σ²/(2α^p)) Σ_{m>=1} p(p−1)···(p−2m+1) x^{p−2m}; optimal truncation.
  double falling = 1.0;
  double power = std::pow(x, p);
  double sum = 0.0;
  double last = INFINITY;
  for (int m = 1; m < 200; ++m) {
    const double j = 2.0 * m;
    falling *= (p - (j - 2.0)) * (p - (j - 1.0));
    power /= x * x;
    const double term = falling * power;
    if (std::abs(term) >= last) break;
    sum += term;
    last = std::abs(term);
    if (last < 1e-18 * std::abs(sum)) break;
  }
  return 0.5 * scale * sum;
}

GridPath solve_from_fbm(const FouParams& params, const GridPath& fbm, double x0) {
  validate(params);
  validate(fbm);
  const double dt = fbm.dt;
  const double alpha = params.alpha;
  const double decay = std::exp(-alpha * dt);
  // ∫_0^dt e^{−α(dt−u)} [B_k(1 − u/dt) + B_{k+1} u/dt] du = c0 B_k + c1 B_{k+1}
  const double one_minus_decay = -std::expm1(-alpha * dt);
  const double c1 = 1.0 / alpha - one_minus_decay / (alpha * alpha * dt);
  const double c0 = one_minus_decay / alpha - c1;

  GridPath x;
  x.dt = dt;
  const std::size_t n = fbm.steps();
  x.values.resize(n + 1);
  double riemann = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) riemann = decay * riemann + c0 * fbm.values[k - 1] + c1 * fbm.values[k];
    const double e = std::exp(-alpha * dt * static_cast<double>(k));
    x.values[k] = e * x0 + (1.0 - e) * params.mu +
                  params.sigma * (fbm.values[k] - alpha * riemann);
  }
  return x;
}

FouSimulator::FouSimulator(const FouParams& params, double horizon, std::size_t n_steps)
    : params_(params), dt_(horizon / static_cast<double>(n_steps)), sampler_(params.hurst, n_steps) {
  validate(params);
  if (!(horizon > 0.0)) throw DomainError("simulate_fou: T must be positive");
  if (n_steps < 64) throw DomainError("simulate_fou: need n >= 64 steps");
}

GridPath FouSimulator::simulate(std::uint64_t seed, InitMode init) const {
  Engine engine = make_engine(seed);
  double x0 = params_.x0;
  if (init == InitMode::kStationary) {
    std::normal_distribution<double> normal(0.0, 1.0);
    x0 = params_.mu + std::sqrt(stationary_cov(params_, 0.0)) * normal(engine);
  }
  const GridPath fbm = cumulate(sampler_.sample(engine, dt_), dt_);
  return solve_from_fbm(params_, fbm, x0);
}

GridPath simulate_fou(const FouParams& params, double horizon, std::size_t n_steps,
                      std::uint64_t seed, InitMode init) {
  return FouSimulator(params, horizon, n_steps).simulate(seed, init);
}

}  // namespace fou
