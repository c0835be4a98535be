#include <doctest.h>

#include <random>
#include <vector>

#include "fou/errors.hpp"
#include "fou/linalg.hpp"
#include "fou/statistics.hpp"

using namespace fou;

TEST_CASE("constant column has zero variance") {
  const std::vector<double> c(50, 4.2);
  CHECK(variance(c) == 0.0);
  CHECK(correlation(c, c) == 0.0);
}

TEST_CASE("unbiased variance and covariance") {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8.5};
  CHECK(mean(x) == 2.5);
  CHECK(variance(x) == doctest::Approx(5.0 / 3.0));
  CHECK(covariance(x, x) == doctest::Approx(variance(x)));
  const Mat2 m = covariance_matrix(x, y);
  CHECK(m.b == m.c);
  CHECK(m.a == doctest::Approx(variance(x)));
}

TEST_CASE("linearly dependent columns are perfectly correlated") {
  const std::vector<double> x{0.3, -1.0, 2.0, 5.0, 0.1};
  std::vector<double> y, z;
  for (double v : x) {
    y.push_back(3.0 * v - 1.0);
    z.push_back(-0.5 * v + 7.0);
  }
  CHECK(correlation(x, y) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(correlation(x, z) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("KS distance of standard normal draws is below the 1% critical value") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> n01;
  std::vector<double> xs(100000);
  for (double& x : xs) x = n01(rng);
  CHECK(ks_distance_normal(xs) < 1.63 / std::sqrt(1e5));
  for (double& x : xs) x += 0.1;
  CHECK(ks_distance_normal(xs) > 1.63 / std::sqrt(1e5));
}

TEST_CASE("normal cdf and log-log slope") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-14));
  const std::vector<double> t{25, 50, 100, 200}, y{0.4, 0.2, 0.1, 0.05};
  CHECK(log_log_slope(t, y) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("empty input is a domain error") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(mean(empty), DomainError);
  CHECK_THROWS_AS(variance(std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(ks_distance_normal(empty), DomainError);
}

TEST_CASE("2x2 linear algebra") {
  const Mat2 m{4.0, 1.0, 1.0, 3.0};
  const Mat2 inv = inverse(m);
  CHECK(max_abs_diff(m * inv, Mat2::identity()) < 1e-15);
  const Vec2 x = solve(m, {1.0, 2.0});
  CHECK(norm(m * x - Vec2{1.0, 2.0}) < 1e-15);
  const SymEigen e = sym_eigen(Mat2{2.0, 0.0, 0.0, 5.0});
  CHECK(e.lo == 2.0);
  CHECK(e.hi == 5.0);
  CHECK(std::abs(e.hi_vector.y) == doctest::Approx(1.0));
  CHECK(is_spd(m));
  CHECK_FALSE(is_spd(Mat2{1.0, 2.0, 2.0, 1.0}));
  CHECK_THROWS_AS(inverse(Mat2{1.0, 2.0, 2.0, 4.0}), DomainError);
}
