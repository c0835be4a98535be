#pragma once

#include <optional>
#include <vector>

#include "fou/grid_path.hpp"
#include "fou/kernels.hpp"
#include "fou/linalg.hpp"
#include "fou/process.hpp"
#include "fou/rate_scheme.hpp"

namespace fou {

// g(θ) = (α, αμ).
constexpr Vec2 g_of(double alpha, double mu) { return {alpha, alpha * mu}; }
inline Vec2 g_of(const FouParams& p) { return g_of(p.alpha, p.mu); }

/// β features of one observed path on its grid, shared by the score, the
/// information and every likelihood-ratio form.
struct DriftBasis {
  double dt = 0.0;
  double hurst = 0.0;
  std::vector<double> beta_id;   // β_{t_k}[id](x), k = 0..n
  std::vector<double> beta_one;  // β_{t_k}[1] from the closed form, k = 0..n
  std::vector<double> weights;   // drift_weights, k = 0..n−1

  std::size_t steps() const { return weights.size(); }
  double horizon() const { return dt * static_cast<double>(steps()); }

  // β_{t_k}(θ) for the drift −α(x − μ): ⟨v_k, g(θ)⟩ with v_k = (−β[id], β[1]).
  double drift(std::size_t k, Vec2 g) const { return -g.x * beta_id[k] + g.y * beta_one[k]; }
};

DriftBasis drift_basis(const KernelContext& ctx, const GridPath& x);

/// Score, observed information and (in simulation mode) the martingales
/// M^T, N^T with their brackets.
struct ScoreInfo {
  Vec2 zeta;                    // Σ v_k ΔY_k
  std::optional<Vec2> zeta_w;   // Σ v_k ΔW_k (needs the true θ₀)
  Mat2 gamma;                   // Σ v_k v_kᵀ w_k
  std::optional<double> m_t;    // T^{−1/2} Σ β_k[id − μ₀] ΔW_k
  std::optional<double> n_t;    // T^{H−1} Σ β_k[1] ΔW_k
  double qv_m = 0.0;            // T^{−1} Σ β_k[id − μ₀]² w_k
  double qv_mn = 0.0;           // T^{H−3/2} Σ β_k[id − μ₀] β_k[1] w_k
  double qv_n = 0.0;            // T^{2H−2} Σ β_k[1]² w_k
  double horizon = 0.0;
  double hurst = 0.0;
  double mu0 = 0.0;

  // Q = [[qv_m, qv_mn], [qv_mn, qv_n]]; Γ = S Q Sᵀ exactly.
  Mat2 brackets() const { return {qv_m, qv_mn, qv_mn, qv_n}; }
};

/// Pre: x, y on the same grid and `horizon` equal to its length (DomainError
/// otherwise). With `truth`, W = Y − ∫β(θ₀) is formed and zeta_w, m_t, n_t
/// are populated.
ScoreInfo score_and_info(const KernelContext& ctx, const GridPath& x, const GridPath& y, double mu0_hint,
                         double horizon, const std::optional<FouParams>& truth = std::nullopt);
ScoreInfo score_and_info(const DriftBasis& basis, const GridPath& y, double mu0_hint,
                         const std::optional<Vec2>& g_true = std::nullopt);

/// ĝ = Γ⁻¹ζ. Throws ConditioningError if det Γ <= 1e−12·trace(Γ)².
Vec2 mle_g(const ScoreInfo& info);
Vec2 mle_g(const Mat2& gamma, Vec2 zeta);

/// g⁻¹: (α̂, γ̂/α̂) when |α̂| > 1e−12, else (0, 0).
Vec2 mle_theta(Vec2 g_hat);

/// ℓ_T(θ) − ℓ_T(θ₀) = ⟨g − g₀, ζ⟩ − ½(⟨g, Γg⟩ − ⟨g₀, Γg₀⟩).
double log_likelihood_ratio(const ScoreInfo& info, Vec2 g, Vec2 g0);
double log_likelihood_ratio(const KernelContext& ctx, const GridPath& x, const GridPath& y,
                            const FouParams& theta, const FouParams& theta0);

/// Per-grid forms, no bilinear shortcut:
///   Y-form: Σ (β_k(θ) − β_k(θ₀)) ΔY_k − ½ Σ (β_k(θ)² − β_k(θ₀)²) w_k
///   W-form: Σ (β_k(θ) − β_k(θ₀)) ΔW_k − ½ Σ (β_k(θ) − β_k(θ₀))² w_k
double log_likelihood_ratio_y(const DriftBasis& basis, const GridPath& y, Vec2 g, Vec2 g0);
double log_likelihood_ratio_w(const DriftBasis& basis, const GridPath& w, Vec2 g, Vec2 g0);

enum class LanForm {
  kLinear,   // θ = g⁻¹(g(θ₀) + φ_T u)
  kNatural,  // θ = θ₀ + Ψ_T u
};

struct LanPair {
  double lhs = 0.0;        // log-likelihood ratio at the shifted parameter
  double quadratic = 0.0;  // ⟨u, Δ_T⟩ − ½⟨u, I u⟩
  Vec2 delta;              // Δ_T = −φ̃_Tᵀ (M_T, N_T)
  Vec2 g_shifted;
};

/// Pre: info built with the true θ₀ (m_t, n_t present) and the shifted α > 0.
/// Throws PreconditionError when the shift leaves α > 0, or M/N are missing.
LanPair lan_pair(const ScoreInfo& info, const RateScheme& scheme, const FisherInfo& fisher, Vec2 u,
                 LanForm form = LanForm::kLinear);

}  // namespace fou
