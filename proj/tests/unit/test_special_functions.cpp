#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fou/errors.hpp"
#include "fou/special_functions.hpp"

using namespace fou;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("log_gamma at exact points") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(2.0)) < 1e-15);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches high-precision values") {
  struct Pin {
    double x, value;
  };
  const Pin pins[] = {{4.7, 2.7364051463155666822},  {0.05, 2.9688792010517308254}, {0.3, 1.0957979948180755217},
                      {2.5, 0.28468287047291915963}, {7.25, 7.0521854507385394449}, {12.5, 18.734347511936445702},
                      {29.5, 69.569080920823634183}};
  for (const Pin& p : pins) {
    CAPTURE(p.x);
    CHECK(rel(log_gamma(p.x), p.value) < 1e-13);
  }
}

TEST_CASE("gamma, beta and digamma") {
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(beta_fn(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(rel(digamma(0.2), -5.2890398965921882955) < 1e-13);
  CHECK(rel(digamma(1.0), -0.57721566490153286061) < 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(beta_fn(-1.0, 1.0), DomainError);
}

TEST_CASE("scaled upper incomplete gamma") {
  CHECK(rel(upper_gamma_scaled(1.6, 3.0), 2.2826051361719329121) < 1e-12);
  CHECK(rel(upper_gamma_scaled(1.6, 0.4), 1.163805992895517064) < 1e-12);
  CHECK(rel(upper_gamma_scaled(1.6, 0.0), gamma_fn(1.6)) < 1e-13);
  CHECK(rel(upper_gamma_scaled(1.0, 2.5), 1.0) < 1e-13);
}

TEST_CASE("lambda_H equals one at the Brownian boundary") {
  CHECK(lambda_h(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(lambda_h(1.0), DomainError);
}

TEST_CASE("Hurst constants match high-precision values") {
  struct Pin {
    double h, bar_d, lambda, beta;
  };
  const Pin pins[] = {
      {0.05, 0.75926215165331935958, 0.3334494378072819716, 1.812397928155027756},
      {0.1, 1.1815312537414529528, 0.56276769932326010492, 2.1130846015858645218},
      {0.25, 2.8700935089041513716, 0.89860517605169415558, 3.7081493546027438369},
      {0.3, 3.9032137873474581331, 0.94503573922860583597, 4.7507506949421837075},
      {0.4, 8.953816091182753747, 0.99010190824600437279, 9.8573197445250808316},
      {0.45, 18.976341616717525499, 0.99790129599229427146, 19.923472710313497255},
  };
  for (const Pin& p : pins) {
    CAPTURE(p.h);
    const HurstConstant c = hurst_constants(p.h);
    CHECK(rel(c.bar_d, p.bar_d) < 1e-12);
    CHECK(rel(c.lambda, p.lambda) < 1e-12);
    CHECK(rel(c.beta_32_12, p.beta) < 1e-12);
  }
}

TEST_CASE("lambda beta squared identity on the H grid") {
  for (int i = 0; i <= 40; ++i) {
    const double h = std::min(0.05 + 0.01 * i, kMaxHurst);
    CAPTURE(h);
    const HurstConstant c = hurst_constants(h);
    const double ratio = c.lambda * c.beta_32_12 * c.beta_32_12 / ((2.0 - 2.0 * h) * c.bar_d * c.bar_d);
    CHECK(std::abs(ratio - 1.0) < 1e-12);
  }
}

TEST_CASE("Hurst constants reject H outside the supported range") {
  CHECK_THROWS_AS(hurst_constants(0.5), DomainError);
  CHECK_THROWS_AS(hurst_constants(0.01), DomainError);
  CHECK_THROWS_AS(hurst_constants(0.46), DomainError);
}
