#include "fou/likelihood.hpp"

#include <cmath>
#include <string>

#include "fou/errors.hpp"

namespace fou {
namespace {

void require_same_grid(const GridPath& x, const GridPath& y) {
  validate(x);
  validate(y);
  if (x.steps() != y.steps() || std::abs(x.dt - y.dt) > 1e-12 * x.dt)
    throw DomainError("paths x and y are not on the same grid");
}

}  // namespace

DriftBasis drift_basis(const KernelContext& ctx, const GridPath& x) {
  validate(x);
  DriftBasis basis;
  basis.dt = x.dt;
  basis.hurst = ctx.hurst;
  basis.beta_id = beta_transform_grid(ctx, x);
  const std::size_t n = x.steps();
  basis.beta_one.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) basis.beta_one[k] = beta_one(ctx, x.time(k));
  basis.weights = drift_weights(ctx.hurst, x.dt, n);
  return basis;
}

ScoreInfo score_and_info(const KernelContext& ctx, const GridPath& x, const GridPath& y, double mu0_hint,
                         double horizon, const std::optional<FouParams>& truth) {
  require_same_grid(x, y);
  if (std::abs(horizon - x.horizon()) > 1e-9 * x.horizon())
    throw DomainError("score_and_info: T does not match the path horizon");
  std::optional<Vec2> g_true;
  if (truth) g_true = g_of(*truth);
  return score_and_info(drift_basis(ctx, x), y, mu0_hint, g_true);
}

ScoreInfo score_and_info(const DriftBasis& basis, const GridPath& y, double mu0_hint,
                         const std::optional<Vec2>& g_true) {
  validate(y);
  const std::size_t n = basis.steps();
  if (y.steps() != n || std::abs(y.dt - basis.dt) > 1e-12 * basis.dt)
    throw DomainError("score_and_info: Y is not on the grid of the drift basis");

  Vec2 zeta;
  Vec2 zeta_w;
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  double q_mm = 0.0, q_mn = 0.0;
  double m_sum = 0.0, n_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double b_id = basis.beta_id[k];
    const double b_one = basis.beta_one[k];
    const double w = basis.weights[k];
    const double dy = y.values[k + 1] - y.values[k];
    const double b_m = b_id - mu0_hint * b_one;  // β[id − μ₀]
    zeta.x -= b_id * dy;
    zeta.y += b_one * dy;
    g11 += b_id * b_id * w;
    g12 -= b_id * b_one * w;
    g22 += b_one * b_one * w;
    q_mm += b_m * b_m * w;
    q_mn += b_m * b_one * w;
    if (g_true) {
      const double dw = dy - basis.drift(k, *g_true) * w;
      zeta_w.x -= b_id * dw;
      zeta_w.y += b_one * dw;
      m_sum += b_m * dw;
      n_sum += b_one * dw;
    }
  }

  ScoreInfo info;
  const double t = basis.horizon();
  const double h = basis.hurst;
  info.horizon = t;
  info.hurst = h;
  info.mu0 = mu0_hint;
  info.zeta = zeta;
  info.gamma = {g11, g12, g12, g22};
  info.qv_m = q_mm / t;
  info.qv_mn = q_mn * std::pow(t, h - 1.5);
  info.qv_n = g22 * std::pow(t, 2.0 * h - 2.0);
  if (g_true) {
    info.zeta_w = zeta_w;
    info.m_t = m_sum / std::sqrt(t);
    info.n_t = n_sum * std::pow(t, h - 1.0);
  }
  return info;
}

Vec2 mle_g(const Mat2& gamma, Vec2 zeta) {
  const double det = gamma.det();
  const double scale = gamma.trace() * gamma.trace();
  if (!(det > 1e-12 * scale))
    throw ConditioningError("observed information is near-singular (det = " + std::to_string(det) + ")", det);
  return solve(gamma, zeta);
}

Vec2 mle_g(const ScoreInfo& info) { return mle_g(info.gamma, info.zeta); }

Vec2 mle_theta(Vec2 g_hat) {
  if (std::abs(g_hat.x) > 1e-12) return {g_hat.x, g_hat.y / g_hat.x};
  return {0.0, 0.0};
}

double log_likelihood_ratio(const ScoreInfo& info, Vec2 g, Vec2 g0) {
  if (g == g0) return 0.0;
  const Vec2 dg = g - g0;
  return dot(dg, info.zeta) - 0.5 * (quad_form(g, info.gamma, g) - quad_form(g0, info.gamma, g0));
}

double log_likelihood_ratio(const KernelContext& ctx, const GridPath& x, const GridPath& y,
                            const FouParams& theta, const FouParams& theta0) {
  const ScoreInfo info = score_and_info(ctx, x, y, theta0.mu, x.horizon());
  return log_likelihood_ratio(info, g_of(theta), g_of(theta0));
}

double log_likelihood_ratio_y(const DriftBasis& basis, const GridPath& y, Vec2 g, Vec2 g0) {
  validate(y);
  if (y.steps() != basis.steps()) throw DomainError("log_likelihood_ratio_y: grid mismatch");
  double linear = 0.0, quadratic = 0.0;
  for (std::size_t k = 0; k < basis.steps(); ++k) {
    const double b = basis.drift(k, g);
    const double b0 = basis.drift(k, g0);
    linear += (b - b0) * (y.values[k + 1] - y.values[k]);
    quadratic += (b * b - b0 * b0) * basis.weights[k];
  }
  return linear - 0.5 * quadratic;
}

double log_likelihood_ratio_w(const DriftBasis& basis, const GridPath& w, Vec2 g, Vec2 g0) {
  validate(w);
  if (w.steps() != basis.steps()) throw DomainError("log_likelihood_ratio_w: grid mismatch");
  double linear = 0.0, quadratic = 0.0;
  for (std::size_t k = 0; k < basis.steps(); ++k) {
    const double diff = basis.drift(k, g) - basis.drift(k, g0);
    linear += diff * (w.values[k + 1] - w.values[k]);
    quadratic += diff * diff * basis.weights[k];
  }
  return linear - 0.5 * quadratic;
}

LanPair lan_pair(const ScoreInfo& info, const RateScheme& scheme, const FisherInfo& fisher, Vec2 u,
                 LanForm form) {
  if (!info.m_t || !info.n_t)
    throw PreconditionError("lan_pair: M_T and N_T need the true parameter (simulation mode)");
  const double t = info.horizon;
  const Vec2 g0 = g_of(scheme.alpha0(), scheme.mu0());
  LanPair out;
  if (form == LanForm::kLinear) {
    out.g_shifted = g0 + scheme.phi(t) * u;
    if (!(out.g_shifted.x > 0.0))
      throw PreconditionError("lan_pair: shifted alpha = " + std::to_string(out.g_shifted.x) +
                              " leaves the parameter space (alpha must stay positive)");
  } else {
    const Vec2 theta = Vec2{scheme.alpha0(), scheme.mu0()} + scheme.psi(t) * u;
    if (!(theta.x > 0.0))
      throw PreconditionError("lan_pair: shifted alpha = " + std::to_string(theta.x) +
                              " leaves the parameter space (alpha must stay positive)");
    out.g_shifted = g_of(theta.x, theta.y);
  }
  out.lhs = log_likelihood_ratio(info, out.g_shifted, g0);
  out.delta = -1.0 * (scheme.phi_tilde(t).transpose() * Vec2{*info.m_t, *info.n_t});
  out.quadratic = dot(u, out.delta) - 0.5 * quad_form(u, fisher.matrix, u);
  return out;
}

}  // namespace fou
