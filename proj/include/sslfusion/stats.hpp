#pragma once

#include <cstddef>
#include <span>

namespace sslfusion::stats {

double mean(std::span<const double> values);

// Unbiased sample variance; requires at least 2 values.
double sample_variance(std::span<const double> values);

// Unbiased sample covariance of two equally long series.
double sample_covariance(std::span<const double> a, std::span<const double> b);

double correlation(std::span<const double> a, std::span<const double> b);

// Sample partial correlation of a and b with the linear effect of c removed.
double partial_correlation(std::span<const double> a, std::span<const double> b,
                           std::span<const double> c);

// Standard normal CDF, accurate to machine precision via erfc.
double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1), solved by bisection; no fitted
// polynomial coefficients to get wrong.
double normal_quantile(double p);

}  // namespace sslfusion::stats
