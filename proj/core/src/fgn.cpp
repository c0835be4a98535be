#include "fou/fgn.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <complex>
#include <mutex>

#include "fou/errors.hpp"

namespace fou {
namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

constexpr double kNegativeEigenTolerance = -1e-9;

}  // namespace

void validate(const GridPath& path) {
  if (!(path.dt > 0.0)) throw DomainError("GridPath: dt must be positive");
  if (path.values.size() < 2) throw DomainError("GridPath: need at least two points");
}

double fgn_autocovariance(double hurst, long long lag) {
  const double k = std::abs(static_cast<double>(lag));
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

struct FgnSampler::Plan {
  fftw_plan c2r = nullptr;
  ~Plan() {
    if (c2r != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(c2r);
    }
  }
};

FgnSampler::FgnSampler(double hurst, std::size_t n_steps) : hurst_(hurst), n_(n_steps) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("FgnSampler: H must lie in (0, 1)");
  if (n_steps < 1) throw DomainError("FgnSampler: n_steps must be >= 1");
  half_ = std::bit_ceil(n_steps);
  const std::size_t size = 2 * half_;

  auto row = fftw_buffer<double>(size);
  auto spectrum = fftw_buffer<fftw_complex>(half_ + 1);
  for (std::size_t k = 0; k <= half_; ++k) row[k] = fgn_autocovariance(hurst, static_cast<long long>(k));
  for (std::size_t k = half_ + 1; k < size; ++k) row[k] = row[size - k];

  plan_ = std::make_unique<Plan>();
  auto pattern_in = fftw_buffer<fftw_complex>(half_ + 1);
  auto pattern_out = fftw_buffer<double>(size);
  {
    std::lock_guard lock(planner_mutex());
    fftw_plan r2c = fftw_plan_dft_r2c_1d(static_cast<int>(size), row.get(), spectrum.get(), FFTW_ESTIMATE);
    fftw_execute(r2c);
    fftw_destroy_plan(r2c);
    plan_->c2r = fftw_plan_dft_c2r_1d(static_cast<int>(size), pattern_in.get(), pattern_out.get(),
                                      FFTW_ESTIMATE);
  }

  sqrt_eig_.resize(half_ + 1);
  for (std::size_t j = 0; j <= half_; ++j) {
    double lambda = spectrum[j][0];
    if (lambda < kNegativeEigenTolerance)
      throw InternalError("FgnSampler: circulant embedding has a negative eigenvalue");
    sqrt_eig_[j] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
}

FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

std::vector<double> FgnSampler::sample(Engine& engine, double dt) const {
  if (!(dt > 0.0)) throw DomainError("FgnSampler::sample: dt must be positive");
  const std::size_t size = 2 * half_;
  auto spectrum = fftw_buffer<fftw_complex>(half_ + 1);
  auto out = fftw_buffer<double>(size);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  spectrum[0][0] = sqrt_eig_[0] * normal(engine);
  spectrum[0][1] = 0.0;
  for (std::size_t j = 1; j < half_; ++j) {
    const double re = normal(engine);
    const double im = normal(engine);
    spectrum[j][0] = sqrt_eig_[j] * inv_sqrt2 * re;
    spectrum[j][1] = sqrt_eig_[j] * inv_sqrt2 * im;
  }
  spectrum[half_][0] = sqrt_eig_[half_] * normal(engine);
  spectrum[half_][1] = 0.0;

  fftw_execute_dft_c2r(plan_->c2r, spectrum.get(), out.get());

  const double scale = std::pow(dt, hurst_) / std::sqrt(static_cast<double>(size));
  std::vector<double> increments(n_);
  for (std::size_t k = 0; k < n_; ++k) increments[k] = scale * out[k];
  return increments;
}

std::vector<double> sample_fgn(const NoiseSpec& spec) {
  if (spec.n_steps < 1) throw DomainError("sample_fgn: n_steps must be >= 1");
  if (!(spec.dt > 0.0)) throw DomainError("sample_fgn: dt must be positive");
  FgnSampler sampler(spec.hurst, spec.n_steps);
  Engine engine = make_engine(spec.seed);
  return sampler.sample(engine, spec.dt);
}

GridPath cumulate(const std::vector<double>& increments, double dt) {
  GridPath path;
  path.dt = dt;
  path.values.resize(increments.size() + 1);
  path.values[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    acc += increments[k];
    path.values[k + 1] = acc;
  }
  return path;
}

GridPath fbm_path(const NoiseSpec& spec) { return cumulate(sample_fgn(spec), spec.dt); }

}  // namespace fou
