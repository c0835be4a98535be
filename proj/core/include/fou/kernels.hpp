#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fou/grid_path.hpp"
#include "fou/quadrature.hpp"
#include "fou/special_functions.hpp"

namespace fou {

/// Everything the fundamental-martingale transform needs for one (H, σ).
struct KernelContext {
  double hurst = 0.3;
  double sigma = 1.0;
  HurstConstant constants;
  int quad_nodes = 64;

  double exponent() const { return 0.5 - hurst; }  // a = 1/2 − H
};

// Throws DomainError on σ <= 0, quad_nodes < 16 or H outside the supported range.
KernelContext make_kernel_context(double hurst, double sigma, int quad_nodes = 64);

/// η_H(t, s) = d̄_H⁻¹ s^{1/2−H} ∫_s^t (u−s)^{−1/2−H} u^{H−1/2} du for 0 <= s <= t.
///
/// The substitution u = s + (t−s) w^{1/(1/2−H)} cancels the endpoint
/// singularity exactly, leaving a smooth integrand in w that is integrated by
/// composite Gauss–Legendre with panels graded towards the
/// u^{H−1/2} transition near w = (s/(t−s))^{1/2−H}.
double eta(const KernelContext& ctx, double t, double s);

/// G(ρ) = ∫_ρ^1 (1−w)^{−1/2−H} w^{−1} dw, so that
/// η_H(t, s) = d̄_H⁻¹ s^{1/2−H} G(s/t).
///
/// Evaluated from Chebyshev fits of G(ρ) + log ρ on ρ <= 1/2 and of
/// G(1−q)/q^{1/2−H} on q < 1/2; both are analytic on the disc of radius one.
class EtaRatioKernel {
 public:
  explicit EtaRatioKernel(double hurst);

  double operator()(double rho) const;

  // Pieces used by the row evaluator: G(ρ) = −log ρ + near_zero(ρ) for
  // ρ <= 1/2 and G(ρ) = q^a near_one(q), q = 1 − ρ, otherwise.
  double near_zero(double rho) const;
  double near_one(double q) const;

  double exponent() const { return a_; }

 private:
  static constexpr int kDegree = 26;
  double a_;
  double zero_coeffs_[kDegree];
  double one_coeffs_[kDegree];
};

/// Dimensionless midpoint kernel Ŕ(k, i) = (i+½)^{1/2−H} G((i+½)/k) for the
/// grid Volterra sum Y_k = σ⁻¹ d̄_H⁻¹ dt^{1/2−H} Σ_{i<k} Ŕ(k, i) Δx_i.
///
/// Rows k = 1..n are stored packed (row k has k entries). The table is dt-free,
/// so one table serves every path with the same H and at most n steps.
class EtaTable {
 public:
  EtaTable(double hurst, std::size_t n_steps);

  double hurst() const { return hurst_; }
  std::size_t steps() const { return n_; }
  std::span<const double> row(std::size_t k) const {
    return {data_.data() + k * (k - 1) / 2, k};
  }

 private:
  double hurst_;
  std::size_t n_;
  std::vector<double> data_;
};

// Row-by-row evaluator of the midpoint kernel for rows k <= n_max, with the
// powers and logarithms of the half-integers cached.
class EtaRowEvaluator {
 public:
  EtaRowEvaluator(double hurst, std::size_t n_max);

  // Writes Ŕ(k, i) for i = 0..k−1 into out (size >= k). Pre: 1 <= k <= n_max.
  void row(std::size_t k, std::span<double> out) const;

 private:
  EtaRatioKernel kernel_;
  std::vector<double> pow_half_;  // (i+½)^a
  std::vector<double> log_half_;  // log(i+½)
};

/// β_t[f] = σ⁻¹ d̄_H⁻¹ t^{H−1/2} ∫_0^t (t−s)^{−1/2−H} s^{1/2−H} f(x_s) ds at a
/// single time t in (0, T], where `fx` holds f(x_s) on the grid.
///
/// Product integration: f(x_0) is carried by the closed Beta form and
/// h(s) = s^{1/2−H}(f(x_s) − f(x_0)) is interpolated linearly with the
/// weight (t−s)^{−1/2−H} integrated exactly on each cell.
double beta_transform(const KernelContext& ctx, const GridPath& fx, double t);

/// β_{t_k}[f] for every grid point k = 0..n (β_0 = 0). Same rule as
/// beta_transform, evaluated as one Toeplitz sum.
std::vector<double> beta_transform_grid(const KernelContext& ctx, const GridPath& fx);

/// Closed form β_t[1] = σ⁻¹ d̄_H⁻¹ B(3/2−H, 1/2−H) t^{1/2−H}.
double beta_one(const KernelContext& ctx, double t);

/// Y_{t_k} = σ⁻¹ Σ_{i<k} η_H(t_k, m_i)(x_{i+1} − x_i), m_i the cell midpoint; Y_0 = 0.
/// Pre: x has at least 64 steps. With a table, it must match H and cover x.
GridPath compute_y(const KernelContext& ctx, const GridPath& x, const EtaTable* table = nullptr);

/// Exact one-step predictor of unit-step fGn (Durbin–Levinson), the discrete
/// analogue of the fundamental martingale: for x = σB^H the transformed
/// increments ΔY_k = σ⁻¹ dt^{1/2−H} v_k^{−1/2} (Δx_k − Σ_j φ_{k,j} Δx_{k−j})
/// are iid N(0, dt), and for a drift term ΔY_k tends to β_{t_k} dt.
///
/// Rows are stored packed and reversed (row k holds φ_{k,k}, ..., φ_{k,1}),
/// so memory is n(n−1)/2 doubles. dt-free: one filter serves every path with
/// the same H and at most n steps.
class InnovationFilter {
 public:
  InnovationFilter(double hurst, std::size_t n_steps);

  double hurst() const { return hurst_; }
  std::size_t steps() const { return n_; }
  // Coefficients on Δx_0, ..., Δx_{k−1} for predicting Δx_k.
  std::span<const double> row(std::size_t k) const { return {coeffs_.data() + k * (k - 1) / 2, k}; }
  // Prediction error variance of Δx_k (unit steps); decreasing in k.
  double variance(std::size_t k) const { return variance_[k]; }

 private:
  double hurst_;
  std::size_t n_;
  std::vector<double> coeffs_;
  std::vector<double> variance_;
};

enum class YScheme {
  kInnovation,  // exact discrete martingale; default for estimation
  kMidpoint,    // midpoint η quadrature (compute_y)
};

YScheme parse_y_scheme(std::string_view name);
std::string_view to_string(YScheme scheme);

/// Innovation form of Y. Pre: the filter matches H and covers x.
GridPath compute_y_innovation(const KernelContext& ctx, const GridPath& x, const InnovationFilter& filter);

/// Quadrature weights of the left-point rule Σ_k F(t_k) w_k used for every
/// dt-integral against the β features: w_k = ∫_{t_k}^{t_{k+1}} s^{1−2H} ds / t_k^{1−2H}
/// for k >= 2, w_1 carries [0, t_2], w_0 = 0. Exact for F(t) ∝ t^{1−2H}, i.e. β[1]².
std::vector<double> drift_weights(double hurst, double dt, std::size_t n_steps);

/// W_t = Y_t − ∫_0^t β_s(θ₀) ds on the drift_weights rule. `beta_true` holds
/// β_{t_k}(θ₀) for k = 0..n.
GridPath recover_w(const KernelContext& ctx, const GridPath& y, std::span<const double> beta_true);

}  // namespace fou
