#include "fou/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fou/errors.hpp"

namespace fou {
namespace {

void require(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) throw DomainError(std::string(what) + ": not enough data");
}

}  // namespace

double mean(std::span<const double> xs) {
  require(xs.size(), 1, "mean");
  double sum = 0.0;
  for (const double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("covariance: columns differ in length");
  require(xs.size(), 2, "covariance");
  // Shifted two-pass form: exact zero for constant columns.
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i] - xs[0];
    sy += ys[i] - ys[0];
  }
  const double mx = sx / n, my = sy / n;
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += (xs[i] - xs[0] - mx) * (ys[i] - ys[0] - my);
  return sum / (n - 1.0);
}

double variance(std::span<const double> xs) { return covariance(xs, xs); }

double correlation(std::span<const double> xs, std::span<const double> ys) {
  const double vx = variance(xs);
  const double vy = variance(ys);
  if (vx == 0.0 || vy == 0.0) return 0.0;
  return std::clamp(covariance(xs, ys) / std::sqrt(vx * vy), -1.0, 1.0);
}

Mat2 covariance_matrix(std::span<const double> xs, std::span<const double> ys) {
  const double c = covariance(xs, ys);
  return {variance(xs), c, c, variance(ys)};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_distance_normal(std::span<const double> xs) {
  require(xs.size(), 1, "ks_distance_normal");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double log_log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("log_log_slope: columns differ in length");
  require(xs.size(), 2, "log_log_slope");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("log_log_slope: entries must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return covariance(lx, ly) / variance(lx);
}

}  // namespace fou
