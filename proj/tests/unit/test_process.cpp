#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fou/errors.hpp"
#include "fou/process.hpp"
#include "fou/random.hpp"
#include "fou/special_functions.hpp"
#include "fou/statistics.hpp"

using namespace fou;

TEST_CASE("noiseless path follows the deterministic relaxation") {
  const FouParams p{1.0, 2.0, 0.0, 0.3, 0.0};
  const std::size_t n = 1u << 14;
  const GridPath x = simulate_fou(p, 1.0, n, 3, InitMode::kFixed);
  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, std::abs(x.values[i] - 2.0 * (1.0 - std::exp(-x.time(i)))));
  CHECK(worst <= 1e-6);
}

TEST_CASE("same seed gives the same path") {
  const FouParams p{1.0, 2.0, 1.0, 0.3, 0.0};
  FouSimulator sim(p, 10.0, 640);
  CHECK(sim.simulate(17, InitMode::kStationary).values == sim.simulate(17, InitMode::kStationary).values);
  CHECK(sim.simulate(17, InitMode::kStationary).values != sim.simulate(18, InitMode::kStationary).values);
  CHECK(simulate_fou(p, 10.0, 640, 17, InitMode::kFixed).values == sim.simulate(17, InitMode::kFixed).values);
}

TEST_CASE("stationary paths have mean mu") {
  const FouParams p{1.0, 2.0, 1.0, 0.3, 0.0};
  FouSimulator sim(p, 2.0, 128);
  std::vector<double> end;
  for (std::uint64_t r = 0; r < 10000; ++r) end.push_back(sim.simulate(derive_seed(77, r), InitMode::kStationary).values.back());
  const double se = std::sqrt(variance(end) / static_cast<double>(end.size()));
  CHECK(std::abs(mean(end) - p.mu) < 3.0 * se);
  CHECK(variance(end) == doctest::Approx(stationary_cov(p, 0.0)).epsilon(0.05));
}

TEST_CASE("fixed start uses x0") {
  const FouParams p{1.0, 2.0, 1.0, 0.3, -1.5};
  CHECK(simulate_fou(p, 1.0, 64, 1, InitMode::kFixed).values.front() == -1.5);
}

TEST_CASE("stationary covariance matches high-precision values") {
  const FouParams p{1.0, 0.0, 1.0, 0.3, 0.0};
  struct Pin {
    double t, c;
  };
  const Pin pins[] = {{0.0, 0.446757674643845131},      {0.1, 0.323096911763849474},
                      {0.5, 0.153772926213780117},      {1.0, 0.0617334105041321209},
                      {2.0, -0.0020576222967894978},    {5.0, -0.0127217555665339488},
                      {20.0, -0.0018260870911740169},   {50.0, -0.000502585642063691892},
                      {100.0, -0.000190251181920045628}, {200.0, -0.0000720735219720638586}};
  for (const Pin& pin : pins) {
    CAPTURE(pin.t);
    CHECK(std::abs(stationary_cov(p, pin.t) - pin.c) < 1e-10 * std::abs(pin.c) + 1e-15);
  }
  const FouParams q{2.0, 0.0, 0.5, 0.1, 0.0};
  CHECK(stationary_cov(q, 0.0) == doctest::Approx(0.0999140394871256874).epsilon(1e-13));
  CHECK(stationary_cov(q, 0.7) == doctest::Approx(-0.00129639020924716636).epsilon(1e-10));
  CHECK(stationary_cov(q, 3.0) == doctest::Approx(-0.000799623957864859803).epsilon(1e-10));
}

TEST_CASE("stationary covariance is even, peaks at zero and decays like t^(2H-2)") {
  const FouParams p{1.0, 0.0, 1.0, 0.3, 0.0};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng);
    CHECK(stationary_cov(p, t) == stationary_cov(p, -t));
    CHECK(stationary_cov(p, 0.0) >= stationary_cov(p, t));
  }
  CHECK(stationary_cov(p, 0.0) == doctest::Approx(gamma_fn(1.6) / 2.0).epsilon(1e-13));
  // Tail constant σ²H(2H−1)/α² is negative for H < 1/2.
  for (double t : {50.0, 100.0, 200.0}) {
    CAPTURE(t);
    const double scaled = stationary_cov(p, t) * std::pow(t, 2.0 - 2.0 * 0.3);
    CHECK(scaled / stationary_cov(p, t / 2.0) / std::pow(t / 2.0, 2.0 - 2.0 * 0.3) == doctest::Approx(1.0).epsilon(0.15));
    CHECK(scaled == doctest::Approx(-0.12).epsilon(0.15));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(FouParams{0.0, 0.0, 1.0, 0.3, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(FouParams{1.0, 0.0, -1.0, 0.3, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(FouParams{1.0, 0.0, 1.0, 0.55, 0.0}), DomainError);
  CHECK_NOTHROW(validate(FouParams{1.0, 0.0, 0.0, 0.3, 0.0}));
  CHECK(parse_init_mode("stationary") == InitMode::kStationary);
  CHECK_THROWS(parse_init_mode("random"));
}
