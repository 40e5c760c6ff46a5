#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "sslfusion/defaults.hpp"

// Robot-side path: fit the secondary-to-primary map, estimate the
// conditional-variance proxy from observed variables only, and fuse.
// Fitted regressors are immutable after construction and safe to share
// across threads.

namespace sslfusion::estimation {

struct LinearMap {
  double a = 0.0;  // slope
  double b = 0.0;  // intercept; zero for the minimal model
  double predict(double x) const { return a * x + b; }
};

// Least squares through the origin: minimizes sum (a*x - y)^2.
// Requires >= 2 pairs with not-all-identical inputs.
LinearMap fit_linear(std::span<const double> inputs, std::span<const double> targets);

// Ordinary least squares with intercept; same degeneracy rules.
LinearMap fit_affine(std::span<const double> inputs, std::span<const double> targets);

// Scalar k-nearest-neighbor regressor. Prediction is the unweighted mean
// of the k targets with the smallest |input - x|; exact distance ties are
// broken by smaller input first, then by training order, so predictions
// are reproducible bit-for-bit.
class KnnRegressor {
 public:
  KnnRegressor() = default;

  // Requires 1 <= k <= inputs.size().
  static KnnRegressor fit(std::span<const double> inputs,
                          std::span<const double> targets, int k);

  double predict(double x) const;

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return inputs_.size(); }

  // Training pairs in original order, for serialization.
  std::vector<double> training_inputs() const;
  std::vector<double> training_targets() const;

 private:
  int k_ = 0;
  // Sorted by input; ties keep training order. order_[i] is the original
  // index of sorted entry i.
  std::vector<double> inputs_;
  std::vector<double> targets_;
  std::vector<std::uint32_t> order_;
};

using Regressor = std::variant<LinearMap, KnnRegressor>;

double predict(const Regressor& regressor, double x);

// Robot-side fusion state: the known primary-cue variance, the estimated
// conditional-variance proxy for the learned cue, and the fitted map.
struct FusionModel {
  double sigma_g2_known = 1.0;
  double s_hat = 1.0;
  Regressor regressor = LinearMap{};

  void validate() const;  // both variances finite and > 0
  double predict(double raw_secondary) const { return estimation::predict(regressor, raw_secondary); }
};

// Precision-weighted average (sigma_g2 * y_f + s_hat * x_g) / (sigma_g2 + s_hat).
// The output always lies between the two inputs.
double fuse(const FusionModel& model, double y_f, double x_g);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

inline constexpr Interval kDefaultVarianceWindow{kDefaultWindowLo, kDefaultWindowHi};

// Unbiased sample variance of the values whose paired conditioner lies in
// the window. Throws InsufficientDataError when fewer than 2 pairs fall
// inside (callers may widen the window and retry).
double estimate_conditional_variance_windowed(std::span<const double> values,
                                              std::span<const double> conditioners,
                                              Interval window = kDefaultVarianceWindow);

// Same estimator over the central_percent% of pairs whose conditioner is
// closest to its median rank; suits data whose conditioner is not on a
// unit scale.
double estimate_conditional_variance_central(std::span<const double> values,
                                             std::span<const double> conditioners,
                                             double central_percent = kDefaultCentralPercent);

// Moment plug-in var(values) - cov(values, conditioners)^2 / var(conditioners),
// clamped below at variance_floor. Requires >= 3 pairs and a non-constant
// conditioner.
double estimate_conditional_variance_moments(std::span<const double> values,
                                             std::span<const double> conditioners,
                                             double variance_floor = kVarianceFloor);

struct ErrorStats {
  double mse = 0.0;
  double mae = 0.0;
};

ErrorStats errors(std::span<const double> estimates, std::span<const double> truths);

}  // namespace sslfusion::estimation
