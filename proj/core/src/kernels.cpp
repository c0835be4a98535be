#include "fou/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fou/errors.hpp"
#include "fou/fgn.hpp"

namespace fou {
namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Chebyshev interpolant coefficients of f on [0, 1/2].
template <class F>
void chebyshev_fit(F&& f, int degree, double* coeffs) {
  std::vector<double> values(degree);
  for (int k = 0; k < degree; ++k) {
    const double x = std::cos(std::numbers::pi * (k + 0.5) / degree);
    values[k] = f(0.25 * (x + 1.0));
  }
  for (int m = 0; m < degree; ++m) {
    double sum = 0.0;
    for (int k = 0; k < degree; ++k) sum += values[k] * std::cos(std::numbers::pi * m * (k + 0.5) / degree);
    coeffs[m] = (m == 0 ? 1.0 : 2.0) * sum / degree;
  }
}

// Clenshaw evaluation on [0, 1/2].
inline double chebyshev_eval(const double* coeffs, int degree, double r) {
  const double x = 4.0 * r - 1.0;
  const double two_x = 2.0 * x;
  double b1 = 0.0, b2 = 0.0;
  for (int m = degree - 1; m >= 1; --m) {
    const double b0 = coeffs[m] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + x * b1 - b2;
}

double checked_exponent(double hurst) {
  if (!(hurst > 0.0 && hurst < 0.5)) throw DomainError("kernel: H must lie in (0, 1/2)");
  return 0.5 - hurst;
}

// ∫_l^r (t−s)^{a−1} h(s) ds with h linear from h_l to h_r; t >= r.
double cell_integral(double a, double t, double l, double r, double h_l, double h_r) {
  const double tau0 = t - r;
  const double tau1 = t - l;
  const double j0 = (std::pow(tau1, a) - std::pow(tau0, a)) / a;
  const double j1 = (std::pow(tau1, a + 1.0) - std::pow(tau0, a + 1.0)) / (a + 1.0);
  return (h_l * (j1 - tau0 * j0) + h_r * (tau1 * j0 - j1)) / (tau1 - tau0);
}

// Toeplitz weights ŵ_e of the grid product-integration rule (unit spacing):
// ŵ_0 = 1/(a(a+1)), ŵ_e = F(e+1) − 2F(e) + F(e−1) with F(τ) = τ^{a+1}/(a(a+1)).
std::vector<double> toeplitz_weights(double a, std::size_t n) {
  std::vector<double> w(n + 1);
  const double norm = 1.0 / (a * (a + 1.0));
  w[0] = norm;
  for (std::size_t e = 1; e <= n; ++e) {
    const double ed = static_cast<double>(e);
    if (e < 8) {
      w[e] = norm * (std::pow(ed + 1.0, a + 1.0) - 2.0 * std::pow(ed, a + 1.0) +
                     std::pow(ed - 1.0, a + 1.0));
    } else {
      // 2 e^{a+1} Σ_{m>=1} C(a+1, 2m) e^{−2m}
      const double inv2 = 1.0 / (ed * ed);
      double binom = 1.0;  // C(a+1, j) built incrementally
      double power = 1.0;
      double sum = 0.0;
      for (int j = 1; j <= 40; ++j) {
        binom *= (a + 1.0 - (j - 1)) / j;
        if (j % 2 == 1) continue;
        power *= inv2;
        const double term = binom * power;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      w[e] = norm * 2.0 * std::pow(ed, a + 1.0) * sum;
    }
  }
  return w;
}

// Σ a_i b_i with four independent accumulators (fixed order, so results are
// reproducible; breaks the add-latency chain of the long inner sums).
double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

KernelContext make_kernel_context(double hurst, double sigma, int quad_nodes) {
  if (!(sigma > 0.0)) throw DomainError("KernelContext: sigma must be positive");
  if (quad_nodes < 16) throw DomainError("KernelContext: quad_nodes must be >= 16");
  KernelContext ctx;
  ctx.hurst = hurst;
  ctx.sigma = sigma;
  ctx.constants = hurst_constants(hurst);
  ctx.quad_nodes = quad_nodes;
  return ctx;
}

double eta(const KernelContext& ctx, double t, double s) {
  if (!(s >= 0.0) || !(s <= t)) throw DomainError("eta: need 0 <= s <= t");
  if (s == 0.0 || s == t) return 0.0;
  const double a = ctx.exponent();
  const double span = t - s;
  const double inv_a = 1.0 / a;
  auto integrand = [&](double w) { return std::pow(s + span * std::pow(w, inv_a), -a); };

  // Panels graded geometrically around the transition w* where span·w^{1/a} = s.
  const double centre = std::min(1.0, std::pow(s / span, a));
  std::vector<double> breaks{0.0};
  for (int j = 40; j >= 1; --j) breaks.push_back(centre * std::ldexp(1.0, -j));
  for (double b = centre; b < 1.0; b *= 2.0) breaks.push_back(b);
  breaks.push_back(1.0);

  const GaussLegendre rule(ctx.quad_nodes);
  double integral = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    if (breaks[p + 1] > breaks[p]) integral += rule.integrate(integrand, breaks[p], breaks[p + 1]);
  }
  return std::pow(s, a) * std::pow(span, a) * inv_a * integral / ctx.constants.bar_d;
}

EtaRatioKernel::EtaRatioKernel(double hurst) : a_(checked_exponent(hurst)) {
  const double a = a_;
  const double constant = -kEulerGamma - digamma(a);  // ψ(1) − ψ(a)
  // G(ρ) + log ρ = ψ(1) − ψ(a) − Σ_{j>=1} ((1−a)_j / j!) ρ^j / j
  auto near_zero_series = [a, constant](double rho) {
    double coeff = 1.0;
    double power = 1.0;
    double sum = 0.0;
    for (int j = 1; j < 400; ++j) {
      coeff *= (j - a) / j;
      power *= rho;
      const double term = coeff * power / j;
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return constant - sum;
  };
  // G(1−q) / q^a = Σ_{j>=0} q^j / (a + j)
  auto near_one_series = [a](double q) {
    double power = 1.0;
    double sum = 0.0;
    for (int j = 0; j < 400; ++j) {
      const double term = power / (a + j);
      sum += term;
      if (term < 1e-18 * sum) break;
      power *= q;
    }
    return sum;
  };
  chebyshev_fit(near_zero_series, kDegree, zero_coeffs_);
  chebyshev_fit(near_one_series, kDegree, one_coeffs_);
}

double EtaRatioKernel::near_zero(double rho) const { return chebyshev_eval(zero_coeffs_, kDegree, rho); }

double EtaRatioKernel::near_one(double q) const { return chebyshev_eval(one_coeffs_, kDegree, q); }

double EtaRatioKernel::operator()(double rho) const {
  if (!(rho > 0.0) || !(rho <= 1.0)) throw DomainError("EtaRatioKernel: need 0 < rho <= 1");
  if (rho <= 0.5) return -std::log(rho) + near_zero(rho);
  const double q = 1.0 - rho;
  return std::pow(q, a_) * near_one(q);
}

EtaRowEvaluator::EtaRowEvaluator(double hurst, std::size_t n_max)
    : kernel_(hurst), pow_half_(n_max), log_half_(n_max) {
  const double a = kernel_.exponent();
  for (std::size_t i = 0; i < n_max; ++i) {
    const double h = static_cast<double>(i) + 0.5;
    pow_half_[i] = std::pow(h, a);
    log_half_[i] = std::log(h);
  }
}

void EtaRowEvaluator::row(std::size_t k, std::span<double> out) const {
  if (k < 1 || k > pow_half_.size()) throw DomainError("EtaRowEvaluator: row out of range");
  const double a = kernel_.exponent();
  const double kd = static_cast<double>(k);
  const double inv_k = 1.0 / kd;
  const double log_k = std::log(kd);
  const double k_pow = std::pow(kd, -a);
  // ρ = (i+½)/k <= 1/2  <=>  i <= k/2 − ½
  const std::size_t split = std::min(k, static_cast<std::size_t>(std::floor(0.5 * kd - 0.5)) + 1);
  for (std::size_t i = 0; i < split; ++i) {
    const double rho = (static_cast<double>(i) + 0.5) * inv_k;
    out[i] = pow_half_[i] * (log_k - log_half_[i] + kernel_.near_zero(rho));
  }
  for (std::size_t i = split; i < k; ++i) {
    const std::size_t gap = k - i;  // q = (gap − ½)/k
    const double q = (static_cast<double>(gap) - 0.5) * inv_k;
    out[i] = pow_half_[i] * pow_half_[gap - 1] * k_pow * kernel_.near_one(q);
  }
}

EtaTable::EtaTable(double hurst, std::size_t n_steps)
    : hurst_(hurst), n_(n_steps), data_(n_steps * (n_steps + 1) / 2) {
  const EtaRowEvaluator evaluator(hurst, n_steps);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    evaluator.row(k, std::span<double>(data_.data() + k * (k - 1) / 2, k));
  }
}

double beta_one(const KernelContext& ctx, double t) {
  if (!(t >= 0.0)) throw DomainError("beta_one: t must be non-negative");
  return ctx.constants.beta_32_12 * std::pow(t, ctx.exponent()) / (ctx.sigma * ctx.constants.bar_d);
}

double beta_transform(const KernelContext& ctx, const GridPath& fx, double t) {
  validate(fx);
  const double horizon = fx.horizon();
  if (!(t > 0.0)) {
    if (t == 0.0) return 0.0;
    throw DomainError("beta_transform: t must be non-negative");
  }
  if (t > horizon * (1.0 + 1e-12)) throw DomainError("beta_transform: t beyond path horizon");
  const double a = ctx.exponent();
  const double dt = fx.dt;
  const double f0 = fx.values[0];
  auto h_at = [&](std::size_t j) {
    return std::pow(fx.time(j), a) * (fx.values[j] - f0);
  };

  double position = t / dt;
  auto full = static_cast<std::size_t>(std::floor(position + 1e-9));
  full = std::min(full, fx.steps());
  double integral = 0.0;
  for (std::size_t j = 0; j < full; ++j)
    integral += cell_integral(a, t, fx.time(j), fx.time(j + 1), h_at(j), h_at(j + 1));
  const double rest = t - fx.time(full);
  if (rest > 1e-12 * dt && full < fx.steps()) {
    const double frac = rest / dt;
    const double h_t = (1.0 - frac) * h_at(full) + frac * h_at(full + 1);
    integral += cell_integral(a, t, fx.time(full), t, h_at(full), h_t);
  }
  const double closed = f0 * std::pow(t, 2.0 * a) * ctx.constants.beta_32_12;
  return (closed + integral) * std::pow(t, -a) / (ctx.sigma * ctx.constants.bar_d);
}

std::vector<double> beta_transform_grid(const KernelContext& ctx, const GridPath& fx) {
  validate(fx);
  const double a = ctx.exponent();
  const std::size_t n = fx.steps();
  const double f0 = fx.values[0];
  const std::vector<double> w = toeplitz_weights(a, n);
  std::vector<double> w_rev(n + 1);  // w_rev[n − e] = ŵ_e
  for (std::size_t e = 0; e <= n; ++e) w_rev[n - e] = w[e];

  std::vector<double> h(n + 1);
  for (std::size_t j = 0; j <= n; ++j) h[j] = std::pow(static_cast<double>(j), a) * (fx.values[j] - f0);

  const double scale = std::pow(fx.dt, a) / (ctx.sigma * ctx.constants.bar_d);
  const double beta = ctx.constants.beta_32_12;
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    // Σ_{j=1}^{k} ŵ_{k−j} h_j
    const double* wk = w_rev.data() + (n - k);
    const double sum = dot(wk + 1, h.data() + 1, k);
    const double kd = static_cast<double>(k);
    out[k] = scale * (f0 * std::pow(kd, a) * beta + sum * std::pow(kd, -a));
  }
  return out;
}

GridPath compute_y(const KernelContext& ctx, const GridPath& x, const EtaTable* table) {
  validate(x);
  const std::size_t n = x.steps();
  if (n < 64) throw DomainError("compute_y: need n >= 64 steps");
  if (table != nullptr && (table->hurst() != ctx.hurst || table->steps() < n))
    throw DomainError("compute_y: kernel table does not match H or is too short");

  std::vector<double> dx(n);
  for (std::size_t i = 0; i < n; ++i) dx[i] = x.values[i + 1] - x.values[i];

  const double scale = std::pow(x.dt, ctx.exponent()) / (ctx.sigma * ctx.constants.bar_d);
  GridPath y;
  y.dt = x.dt;
  y.values.assign(n + 1, 0.0);

  std::unique_ptr<EtaRowEvaluator> evaluator;
  std::vector<double> scratch;
  if (table == nullptr) {
    evaluator = std::make_unique<EtaRowEvaluator>(ctx.hurst, n);
    scratch.resize(n);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    const double* row;
    if (table != nullptr) {
      row = table->row(k).data();
    } else {
      evaluator->row(k, scratch);
      row = scratch.data();
    }
    y.values[k] = scale * dot(row, dx.data(), k);
  }
  return y;
}

InnovationFilter::InnovationFilter(double hurst, std::size_t n_steps)
    : hurst_(hurst), n_(n_steps), coeffs_(n_steps * (n_steps - 1) / 2), variance_(n_steps) {
  checked_exponent(hurst);
  if (n_steps < 2) throw DomainError("InnovationFilter: need at least two steps");
  std::vector<double> r(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) r[k] = fgn_autocovariance(hurst, static_cast<long long>(k));

  // Durbin–Levinson on forward coefficients φ_{k,1..k}, then stored reversed.
  std::vector<double> prev, cur;
  prev.reserve(n_steps);
  cur.reserve(n_steps);
  variance_[0] = r[0];
  for (std::size_t k = 1; k < n_steps; ++k) {
    double num = r[k];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * r[k - j];
    const double reflection = num / variance_[k - 1];
    cur.assign(k, 0.0);
    for (std::size_t j = 1; j < k; ++j) cur[j - 1] = prev[j - 1] - reflection * prev[k - j - 1];
    cur[k - 1] = reflection;
    variance_[k] = variance_[k - 1] * (1.0 - reflection * reflection);
    if (!(variance_[k] > 0.0)) throw InternalError("InnovationFilter: prediction variance not positive");
    double* out = coeffs_.data() + k * (k - 1) / 2;
    for (std::size_t i = 0; i < k; ++i) out[i] = cur[k - 1 - i];
    std::swap(prev, cur);
  }
}

YScheme parse_y_scheme(std::string_view name) {
  if (name == "innovation") return YScheme::kInnovation;
  if (name == "midpoint") return YScheme::kMidpoint;
  throw DomainError("unknown Y scheme '" + std::string(name) + "' (expected innovation or midpoint)");
}

std::string_view to_string(YScheme scheme) {
  return scheme == YScheme::kInnovation ? "innovation" : "midpoint";
}

GridPath compute_y_innovation(const KernelContext& ctx, const GridPath& x, const InnovationFilter& filter) {
  validate(x);
  const std::size_t n = x.steps();
  if (n < 64) throw DomainError("compute_y_innovation: need n >= 64 steps");
  if (filter.hurst() != ctx.hurst || filter.steps() < n)
    throw DomainError("compute_y_innovation: filter does not match H or is too short");

  std::vector<double> dx(n);
  for (std::size_t i = 0; i < n; ++i) dx[i] = x.values[i + 1] - x.values[i];
  const double scale = std::pow(x.dt, ctx.exponent()) / ctx.sigma;
  GridPath y;
  y.dt = x.dt;
  y.values.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double predicted = k == 0 ? 0.0 : dot(filter.row(k).data(), dx.data(), k);
    y.values[k + 1] = y.values[k] + scale * (dx[k] - predicted) / std::sqrt(filter.variance(k));
  }
  return y;
}

std::vector<double> drift_weights(double hurst, double dt, std::size_t n_steps) {
  if (n_steps < 2) throw DomainError("drift_weights: need at least two steps");
  const double p1 = 2.0 - 2.0 * hurst;  // exponent of the antiderivative
  std::vector<double> w(n_steps, 0.0);
  w[1] = dt * std::pow(2.0, p1) / p1;
  for (std::size_t k = 2; k < n_steps; ++k) {
    const double kd = static_cast<double>(k);
    w[k] = dt * kd * std::expm1(p1 * std::log1p(1.0 / kd)) / p1;
  }
  return w;
}

GridPath recover_w(const KernelContext& ctx, const GridPath& y, std::span<const double> beta_true) {
  validate(y);
  const std::size_t n = y.steps();
  if (beta_true.size() != n + 1) throw DomainError("recover_w: beta_true length must equal the grid size");
  const std::vector<double> w = drift_weights(ctx.hurst, y.dt, n);
  GridPath out;
  out.dt = y.dt;
  out.values.resize(n + 1);
  out.values[0] = y.values[0];
  double drift = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    drift += beta_true[k] * w[k];
    out.values[k + 1] = y.values[k + 1] - drift;
  }
  return out;
}

}  // namespace fou
