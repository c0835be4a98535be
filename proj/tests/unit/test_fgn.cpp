#include <doctest.h>

#include <cmath>
#include <vector>

#include "fou/fgn.hpp"
#include "fou/random.hpp"
#include "fou/statistics.hpp"

using namespace fou;

TEST_CASE("fGn autocovariance closed form") {
  CHECK(fgn_autocovariance(0.3, 0) == doctest::Approx(1.0));
  CHECK(fgn_autocovariance(0.3, 1) == doctest::Approx((std::pow(2.0, 0.6) - 2.0) / 2.0).epsilon(1e-14));
  CHECK(fgn_autocovariance(0.3, -4) == fgn_autocovariance(0.3, 4));
  CHECK(fgn_autocovariance(0.5, 3) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Brownian increments are uncorrelated at H = 1/2") {
  const std::size_t n = 1u << 20;
  const auto z = sample_fgn({0.5, n, 1.0 / 64.0, 11});
  std::vector<double> lead(z.begin() + 1, z.end()), lag(z.begin(), z.end() - 1);
  CHECK(std::abs(correlation(lead, lag)) < 0.005);
  CHECK(variance(z) * 64.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("lag-one covariance of fGn at H = 0.3") {
  const double dt = 0.01;
  const std::size_t n = 4096, paths = 200;
  FgnSampler sampler(0.3, n);
  std::vector<double> products;
  for (std::size_t p = 0; p < paths; ++p) {
    Engine engine = make_engine(derive_seed(5, p));
    const auto z = sampler.sample(engine, dt);
    for (std::size_t i = 0; i + 1 < n; i += 2) products.push_back(z[i] * z[i + 1] / std::pow(dt, 0.6));
  }
  const double se = std::sqrt(variance(products) / static_cast<double>(products.size()));
  CHECK(std::abs(mean(products) - (std::pow(2.0, 0.6) - 2.0) / 2.0) < 3.0 * se);
}

TEST_CASE("fBm paths start at zero and are reproducible") {
  const NoiseSpec spec{0.3, 256, 1.0 / 256.0, 42};
  const GridPath a = fbm_path(spec), b = fbm_path(spec);
  CHECK(a.values.front() == 0.0);
  CHECK(a.values == b.values);
  CHECK(a.values != fbm_path({0.3, 256, 1.0 / 256.0, 43}).values);
}

TEST_CASE("fBm variance at t = 1 is one") {
  const std::size_t n = 1u << 14, paths = 10000;
  FgnSampler sampler(0.3, n);
  std::vector<double> end(paths), mid(paths);
  for (std::size_t p = 0; p < paths; ++p) {
    Engine engine = make_engine(derive_seed(9, p));
    const auto z = sampler.sample(engine, 1.0 / static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += z[i];
      if (i + 1 == n / 4) mid[p] = sum;
    }
    end[p] = sum;
  }
  const double v = variance(end);
  CHECK(v > 0.97);
  CHECK(v < 1.03);
  CHECK(variance(mid) == doctest::Approx(std::pow(0.25, 0.6)).epsilon(0.03));
}
