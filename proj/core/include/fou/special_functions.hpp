#pragma once

namespace fou {

// Admissible Hurst range for estimation. d̄_H contains Γ(1/2 − H), which
// diverges as H → 1/2, and the singular kernel exponents degenerate as H → 0.
inline constexpr double kMinHurst = 0.05;
inline constexpr double kMaxHurst = 0.45;

/// log Γ(x) for x > 0 (Lanczos, g = 7, nine terms; relative error below
/// 1e-13 on [0.05, 30] away from the zeros at x = 1 and x = 2, where the
/// absolute error is below 1e-15). Throws DomainError for x <= 0.
double log_gamma(double x);

/// Γ(x) for x > 0.
double gamma_fn(double x);

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
double beta_fn(double a, double b);

/// Digamma ψ(x) for x > 0.
double digamma(double x);

/// e^x Γ(s, x): the upper incomplete Gamma function scaled by e^x, for
/// s > 0, x >= 0.
double upper_gamma_scaled(double s, double x);

/// λ_H = 2HΓ(3−2H)Γ(H+1/2)/Γ(3/2−H). Finite for every H in (0, 1); used
/// at H = 1/2 as a boundary probe where it equals one.
double lambda_h(double hurst);

struct HurstConstant {
  double hurst = 0.0;
  double bar_d = 0.0;       // d̄_H = Γ(1/2−H)·(2HΓ(3/2−H)Γ(H+1/2)/Γ(2−2H))^{1/2}
  double lambda = 0.0;      // λ_H
  double beta_32_12 = 0.0;  // B(3/2−H, 1/2−H)
};

/// Constants of the fundamental-martingale construction for H in
/// [kMinHurst, kMaxHurst]. Throws DomainError outside that interval.
HurstConstant hurst_constants(double hurst);

}  // namespace fou
