#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "fou/fgn.hpp"
#include "fou/grid_path.hpp"

namespace fou {

// dX = −α(X − μ)dt + σ dB^H, X_0 = x0.
struct FouParams {
  double alpha = 1.0;  // 1/time, > 0
  double mu = 0.0;     // state units
  double sigma = 1.0;  // state units / time^H
  double hurst = 0.3;  // in [kMinHurst, kMaxHurst]
  double x0 = 0.0;

  double gamma() const { return alpha * mu; }
};

// Throws DomainError for α <= 0, σ < 0, or H outside the supported range.
// σ = 0 is accepted so the deterministic skeleton can be simulated; every
// estimation path requires σ > 0.
void validate(const FouParams& params);

enum class InitMode { kFixed, kStationary };

InitMode parse_init_mode(std::string_view name);
std::string_view to_string(InitMode mode);

/// Stationary covariance c(t) = Cov(X̄_t, X̄_0). Even in t; c(0) = σ²Γ(2H+1)/(2α^{2H}).
double stationary_cov(const FouParams& params, double t);

/// Pathwise solution formula evaluated on the grid of `fbm`:
/// X_t = e^{−αt}x0 + (1 − e^{−αt})μ + σ(B_t − α∫_0^t e^{−α(t−s)} B_s ds),
/// with the Riemann integral accumulated exactly for piecewise-linear B.
GridPath solve_from_fbm(const FouParams& params, const GridPath& fbm, double x0);

/// Reusable simulator for one (params, T, n); holds the fGn embedding.
class FouSimulator {
 public:
  FouSimulator(const FouParams& params, double horizon, std::size_t n_steps);

  const FouParams& params() const { return params_; }
  double dt() const { return dt_; }
  std::size_t steps() const { return sampler_.steps(); }

  // Stationary mode draws X_0 ~ N(μ, c(0)) first, then the fGn, from one engine.
  GridPath simulate(std::uint64_t seed, InitMode init) const;

  // Same path driven by a caller-supplied fBm.
  GridPath simulate_with(const GridPath& fbm, double x0) const { return solve_from_fbm(params_, fbm, x0); }

 private:
  FouParams params_;
  double dt_;
  FgnSampler sampler_;
};

/// Pre: T > 0, n >= 64.
GridPath simulate_fou(const FouParams& params, double horizon, std::size_t n_steps,
                      std::uint64_t seed, InitMode init);

}  // namespace fou
