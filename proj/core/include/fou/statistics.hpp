#pragma once

#include <span>

#include "fou/linalg.hpp"

namespace fou {

// All functions throw DomainError on empty input (or n < 2 where a
// variance is needed).

double mean(std::span<const double> xs);

/// Unbiased sample variance (divisor n − 1).
double variance(std::span<const double> xs);

/// Unbiased sample covariance.
double covariance(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation; 0 if either column is constant.
double correlation(std::span<const double> xs, std::span<const double> ys);

/// 2x2 unbiased sample covariance matrix of (xs, ys).
Mat2 covariance_matrix(std::span<const double> xs, std::span<const double> ys);

double normal_cdf(double z);

/// Two-sided Kolmogorov–Smirnov distance sup|F_n − Φ| of xs against N(0, 1).
double ks_distance_normal(std::span<const double> xs);

/// Least-squares slope of log y against log x (all entries positive).
double log_log_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace fou
