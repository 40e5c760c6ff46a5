#include "sslfusion/stats.hpp"

#include <cmath>
#include <numbers>

#include "sslfusion/errors.hpp"

namespace sslfusion::stats {

double mean(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean: empty input");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw ValidationError("sample_variance: need at least 2 values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - m;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

double sample_covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("sample_covariance: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw ValidationError("sample_covariance: need at least 2 values");
  const double ma = mean(a);
  const double mb = mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(n - 1);
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const double va = sample_variance(a);
  const double vb = sample_variance(b);
  if (va <= 0.0 || vb <= 0.0) throw ValidationError("correlation: constant input");
  return sample_covariance(a, b) / std::sqrt(va * vb);
}

double partial_correlation(std::span<const double> a, std::span<const double> b,
                           std::span<const double> c) {
  const double rab = correlation(a, b);
  const double rac = correlation(a, c);
  const double rbc = correlation(b, c);
  const double denom = std::sqrt((1.0 - rac * rac) * (1.0 - rbc * rbc));
  if (denom <= 0.0) throw ValidationError("partial_correlation: degenerate conditioning");
  return (rab - rac * rbc) / denom;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("normal_quantile: p must lie in (0, 1)");
  double lo = -40.0, hi = 40.0;
  // 200 halvings take the bracket far below one ulp of the result.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * (std::abs(lo) + 1.0)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sslfusion::stats
