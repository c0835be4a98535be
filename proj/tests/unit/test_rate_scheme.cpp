#include <doctest.h>

#include <cmath>

#include "fou/errors.hpp"
#include "fou/rate_scheme.hpp"
#include "fou/special_functions.hpp"

using namespace fou;

TEST_CASE("scheme A normalizes to the identity at every horizon") {
  const RateScheme a = make_rate_scheme(SchemeKind::kA, 1.0, 2.0, 0.3);
  for (double t : {1.0, 100.0, 1e4}) CHECK(max_abs_diff(a.phi_tilde(t), Mat2::identity()) < 1e-14);
  CHECK(a.phi_bar() == Mat2::identity());
  const Mat2 psi_inv = inverse(a.psi(100.0));
  CHECK(psi_inv.a == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(psi_inv.d == doctest::Approx(-std::pow(100.0, 0.7)).epsilon(1e-14));
  CHECK(std::abs(psi_inv.b) < 1e-14);
  CHECK(std::abs(psi_inv.c) < 1e-12);
}

TEST_CASE("scheme B limit is the anti-diagonal") {
  const RateScheme b = make_rate_scheme(SchemeKind::kB, 1.0, 2.0, 0.3);
  CHECK(b.phi_bar() == Mat2{0.0, 1.0, 1.0, 0.0});
  // The off-diagonal gap closes like T^{H−1/2}.
  CHECK(max_abs_diff(b.phi_tilde(1e8), b.phi_bar()) < 0.03);
  CHECK(max_abs_diff(b.phi_tilde(1e8), b.phi_bar()) < max_abs_diff(b.phi_tilde(1e4), b.phi_bar()));
  CHECK_THROWS_AS(make_rate_scheme(SchemeKind::kB, 1.0, 0.0, 0.3), DomainError);
  CHECK_THROWS_AS(make_rate_scheme(SchemeKind::kCustom, 1.0, 2.0, 0.3), DomainError);
}

TEST_CASE("rate-matrix conditions hold for both schemes") {
  for (SchemeKind kind : {SchemeKind::kA, SchemeKind::kB}) {
    const RateSchemeCheck check = check_rate_scheme(make_rate_scheme(kind, 1.0, 2.0, 0.3), {10.0, 100.0, 1e3, 1e4});
    CHECK(check.passed);
  }
}

TEST_CASE("Fisher information inverses") {
  const double alpha = 1.5, sigma = 0.8;
  const HurstConstant c = hurst_constants(0.3);
  const FisherInfo a = fisher_info(make_rate_scheme(SchemeKind::kA, alpha, 2.0, 0.3), sigma, c);
  CHECK(max_abs_diff(a.inverse, Mat2::diag(2.0 * alpha, sigma * sigma * c.lambda)) < 1e-14);
  const FisherInfo b = fisher_info(make_rate_scheme(SchemeKind::kB, alpha, 2.0, 0.3), sigma, c);
  CHECK(max_abs_diff(b.inverse, Mat2::diag(sigma * sigma * c.lambda, 2.0 * alpha)) < 1e-14);
  CHECK(is_spd(a.matrix));
  CHECK(is_spd(b.matrix));
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme_kind("scheme_A") == SchemeKind::kA);
  CHECK(parse_scheme_kind("B") == SchemeKind::kB);
  CHECK(to_string(SchemeKind::kB) == "scheme_B");
  CHECK_THROWS_AS(parse_scheme_kind("scheme_C"), DomainError);
}
