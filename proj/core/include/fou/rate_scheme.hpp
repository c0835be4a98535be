#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "fou/linalg.hpp"
#include "fou/special_functions.hpp"

namespace fou {

enum class SchemeKind { kA, kB, kCustom };

SchemeKind parse_scheme_kind(std::string_view name);  // "scheme_A", "scheme_B" (or "A", "B")
std::string_view to_string(SchemeKind kind);

/// Rate matrices for the (α, γ = αμ) parameterization at θ₀ = (α₀, μ₀).
///
/// phi(T) normalizes ĝ − g(θ₀); phi_tilde(T) = S_Tᵀ phi(T) with
/// S_T = [[√T, μ₀T^{1−H}], [0, −T^{1−H}]] tends to phi_bar; psi(T) = J_g⁻¹ phi(T)
/// normalizes θ̂ − θ₀, where J_g = [[1, 0], [μ₀, α₀]].
class RateScheme {
 public:
  using MatrixFn = std::function<Mat2(double)>;

  RateScheme(SchemeKind kind, double alpha0, double mu0, double hurst, MatrixFn phi, Mat2 phi_bar);

  SchemeKind kind() const { return kind_; }
  double alpha0() const { return alpha0_; }
  double mu0() const { return mu0_; }
  double hurst() const { return hurst_; }

  Mat2 phi(double horizon) const;
  Mat2 phi_tilde(double horizon) const { return s_matrix(horizon).transpose() * phi(horizon); }
  const Mat2& phi_bar() const { return phi_bar_; }
  Mat2 psi(double horizon) const;
  Mat2 s_matrix(double horizon) const;

 private:
  SchemeKind kind_;
  double alpha0_;
  double mu0_;
  double hurst_;
  MatrixFn phi_;
  Mat2 phi_bar_;
};

/// scheme_A: φ_T = [[T^{−1/2}, 0], [μ₀T^{−1/2}, −T^{−(1−H)}]], φ̄ = I.
/// scheme_B: φ_T = [[1/(μ₀T^{1−H}), T^{−1/2}], [0, μ₀T^{−1/2}]], φ̄ = [[0, 1], [1, 0]].
/// Throws DomainError for kCustom, α₀ <= 0, or scheme_B with μ₀ = 0.
RateScheme make_rate_scheme(SchemeKind kind, double alpha0, double mu0, double hurst);

/// Numerical check of the rate-matrix conditions on a list of horizons:
/// det φ_T ≠ 0 at each T, det φ̄ ≠ 0, and ‖φ̃_T − φ̄‖_max non-increasing in T.
struct RateSchemeCheck {
  std::vector<double> horizons;
  std::vector<double> distance;  // max-entry distance of phi_tilde(T) from phi_bar
  std::vector<double> det_phi;
  double det_phi_bar = 0.0;
  bool passed = false;
};

RateSchemeCheck check_rate_scheme(const RateScheme& scheme, const std::vector<double>& horizons);

struct FisherInfo {
  Mat2 matrix;   // I(θ₀) = φ̄ᵀ diag(1/(2α₀), 1/(σ²λ_H)) φ̄
  Mat2 inverse;
};

/// Throws DomainError if φ̄ is singular or σ <= 0.
FisherInfo fisher_info(const RateScheme& scheme, double sigma, const HurstConstant& constants);

}  // namespace fou
