#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "fou/grid_path.hpp"
#include "fou/random.hpp"

namespace fou {

struct NoiseSpec {
  double hurst = 0.5;
  std::size_t n_steps = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
};

// Autocovariance of unit-step fractional Gaussian noise at lag k:
// (|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}) / 2.
double fgn_autocovariance(double hurst, long long lag);

/// Davies–Harte sampler for fractional Gaussian noise of fixed length.
///
/// The circulant embedding of size 2m (m the next power of two >= n) is
/// diagonalised once at construction; each draw costs one complex-to-real
/// FFT. A sampler is immutable after construction and can be shared between
/// threads, each drawing with its own engine.
class FgnSampler {
 public:
  FgnSampler(double hurst, std::size_t n_steps);
  ~FgnSampler();
  FgnSampler(FgnSampler&&) noexcept;
  FgnSampler& operator=(FgnSampler&&) noexcept;
  FgnSampler(const FgnSampler&) = delete;
  FgnSampler& operator=(const FgnSampler&) = delete;

  double hurst() const { return hurst_; }
  std::size_t steps() const { return n_; }

  // n increments on a grid of spacing dt (scaled by dt^H from unit steps).
  std::vector<double> sample(Engine& engine, double dt) const;

 private:
  struct Plan;
  double hurst_;
  std::size_t n_;
  std::size_t half_;             // m; embedding size is 2m
  std::vector<double> sqrt_eig_; // sqrt of circulant eigenvalues, j = 0..m
  std::unique_ptr<Plan> plan_;
};

/// n fGn increments for the given spec, bit-identical for identical specs.
std::vector<double> sample_fgn(const NoiseSpec& spec);

/// fBm path B_0 = 0, B_{t_k} = cumulative sum of sample_fgn(spec).
GridPath fbm_path(const NoiseSpec& spec);

// Cumulative sum of increments on grid dt, prefixed by zero.
GridPath cumulate(const std::vector<double>& increments, double dt);

}  // namespace fou
