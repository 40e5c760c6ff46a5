#include "sslfusion/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sslfusion/errors.hpp"
#include "sslfusion/stats.hpp"

namespace sslfusion::estimation {

namespace {

void require_same_size(std::span<const double> a, std::span<const double> b,
                       const char* who) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(who) + ": input and target lengths differ (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

void require_finite(std::span<const double> v, const char* who) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(std::string(who) + ": non-finite value");
  }
}

bool all_equal(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

LinearMap fit_linear(std::span<const double> inputs, std::span<const double> targets) {
  require_same_size(inputs, targets, "fit_linear");
  if (inputs.size() < 2) throw ValidationError("fit_linear: need at least 2 pairs");
  require_finite(inputs, "fit_linear");
  require_finite(targets, "fit_linear");
  if (all_equal(inputs)) throw ValidationError("fit_linear: all inputs identical");

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    sxx += inputs[i] * inputs[i];
    sxy += inputs[i] * targets[i];
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_linear: inputs have no spread around zero");
  return {sxy / sxx, 0.0};
}

LinearMap fit_affine(std::span<const double> inputs, std::span<const double> targets) {
  require_same_size(inputs, targets, "fit_affine");
  if (inputs.size() < 2) throw ValidationError("fit_affine: need at least 2 pairs");
  require_finite(inputs, "fit_affine");
  require_finite(targets, "fit_affine");
  if (all_equal(inputs)) throw ValidationError("fit_affine: all inputs identical");

  const double mx = stats::mean(inputs);
  const double my = stats::mean(targets);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double dx = inputs[i] - mx;
    sxx += dx * dx;
    sxy += dx * (targets[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_affine: degenerate inputs");
  const double a = sxy / sxx;
  return {a, my - a * mx};
}

KnnRegressor KnnRegressor::fit(std::span<const double> inputs,
                               std::span<const double> targets, int k) {
  require_same_size(inputs, targets, "fit_knn");
  require_finite(inputs, "fit_knn");
  require_finite(targets, "fit_knn");
  if (k < 1) throw ValidationError("fit_knn: k must be >= 1");
  if (static_cast<std::size_t>(k) > inputs.size()) {
    throw ValidationError("fit_knn: k (" + std::to_string(k) + ") exceeds training size (" +
                          std::to_string(inputs.size()) + ")");
  }

  std::vector<std::uint32_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return inputs[a] < inputs[b];
  });

  KnnRegressor r;
  r.k_ = k;
  r.inputs_.reserve(inputs.size());
  r.targets_.reserve(inputs.size());
  for (std::uint32_t idx : order) {
    r.inputs_.push_back(inputs[idx]);
    r.targets_.push_back(targets[idx]);
  }
  r.order_ = std::move(order);
  return r;
}

double KnnRegressor::predict(double x) const {
  if (k_ < 1) throw ValidationError("KnnRegressor::predict: not fitted");
  if (!std::isfinite(x)) throw ValidationError("KnnRegressor::predict: non-finite query");

  const std::size_t n = inputs_.size();
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(inputs_.begin(), inputs_.end(), x) - inputs_.begin());

  // Left side holds inputs strictly below x. It is consumed one
  // equal-input group at a time, each group front-to-back, so that exact
  // distance ties fall back to training order exactly as documented.
  std::size_t group_end = pos;    // one past the current left group
  std::size_t group_begin = pos;  // first member of the current left group
  std::size_t member = pos;       // next member to take within the group
  double left_dist = 0.0;
  const auto descend_to_next_group = [&] {
    group_end = group_begin;
    if (group_end == 0) return;
    group_begin = group_end - 1;
    while (group_begin > 0 && inputs_[group_begin - 1] == inputs_[group_end - 1]) {
      --group_begin;
    }
    member = group_begin;
    left_dist = x - inputs_[group_end - 1];
  };
  descend_to_next_group();

  std::size_t right = pos;
  double sum = 0.0;
  for (int taken = 0; taken < k_; ++taken) {
    const bool left_ok = group_end > 0 && member < group_end;
    const bool right_ok = right < n;
    bool take_left;
    if (left_ok && right_ok) {
      const double right_dist = inputs_[right] - x;
      // Equal distance means the left input is the smaller one: prefer it.
      take_left = left_dist <= right_dist;
    } else {
      take_left = left_ok;
    }
    if (take_left) {
      sum += targets_[member];
      ++member;
      if (member == group_end) descend_to_next_group();
    } else {
      sum += targets_[right];
      ++right;
    }
  }
  return sum / static_cast<double>(k_);
}

std::vector<double> KnnRegressor::training_inputs() const {
  std::vector<double> out(inputs_.size());
  for (std::size_t i = 0; i < inputs_.size(); ++i) out[order_[i]] = inputs_[i];
  return out;
}

std::vector<double> KnnRegressor::training_targets() const {
  std::vector<double> out(targets_.size());
  for (std::size_t i = 0; i < targets_.size(); ++i) out[order_[i]] = targets_[i];
  return out;
}

double predict(const Regressor& regressor, double x) {
  return std::visit([x](const auto& r) { return r.predict(x); }, regressor);
}

void FusionModel::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma_g2_known) || !positive(s_hat)) {
    throw ValidationError("FusionModel: variances must be finite and > 0");
  }
}

double fuse(const FusionModel& model, double y_f, double x_g) {
  model.validate();
  if (y_f == x_g) return x_g;  // exact fixed point regardless of the weights
  return (model.sigma_g2_known * y_f + model.s_hat * x_g) /
         (model.sigma_g2_known + model.s_hat);
}

double estimate_conditional_variance_windowed(std::span<const double> values,
                                              std::span<const double> conditioners,
                                              Interval window) {
  require_same_size(values, conditioners, "estimate_conditional_variance_windowed");
  if (!(window.lo <= window.hi)) {
    throw ValidationError("estimate_conditional_variance_windowed: empty window");
  }
  std::vector<double> inside;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (window.contains(conditioners[i])) inside.push_back(values[i]);
  }
  if (inside.size() < 2) {
    throw InsufficientDataError(
        "estimate_conditional_variance_windowed: only " + std::to_string(inside.size()) +
        " pairs in window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
        "]; widen the window");
  }
  return stats::sample_variance(inside);
}

double estimate_conditional_variance_central(std::span<const double> values,
                                             std::span<const double> conditioners,
                                             double central_percent) {
  require_same_size(values, conditioners, "estimate_conditional_variance_central");
  if (!(central_percent > 0.0 && central_percent <= 100.0)) {
    throw ValidationError("estimate_conditional_variance_central: percent out of (0, 100]");
  }
  const std::size_t n = values.size();
  std::size_t keep = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * central_percent / 100.0));
  keep = std::clamp<std::size_t>(keep, 2, n);
  if (n < 2) {
    throw InsufficientDataError("estimate_conditional_variance_central: need >= 2 pairs");
  }

  std::vector<std::size_t> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
  std::stable_sort(by_rank.begin(), by_rank.end(),
                   [&](std::size_t a, std::size_t b) { return conditioners[a] < conditioners[b]; });

  const std::size_t start = (n - keep) / 2;
  std::vector<double> central;
  central.reserve(keep);
  for (std::size_t r = start; r < start + keep; ++r) central.push_back(values[by_rank[r]]);
  return stats::sample_variance(central);
}

double estimate_conditional_variance_moments(std::span<const double> values,
                                             std::span<const double> conditioners,
                                             double variance_floor) {
  require_same_size(values, conditioners, "estimate_conditional_variance_moments");
  if (values.size() < 3) {
    throw InsufficientDataError("estimate_conditional_variance_moments: need >= 3 pairs");
  }
  if (!(variance_floor > 0.0)) {
    throw ValidationError("estimate_conditional_variance_moments: floor must be > 0");
  }
  const double var_c = stats::sample_variance(conditioners);
  if (!(var_c > 0.0)) {
    throw ValidationError("estimate_conditional_variance_moments: conditioner is constant");
  }
  const double var_v = stats::sample_variance(values);
  const double cov = stats::sample_covariance(values, conditioners);
  const double plug_in = var_v - cov * cov / var_c;
  return std::fmax(plug_in, variance_floor);
}

ErrorStats errors(std::span<const double> estimates, std::span<const double> truths) {
  require_same_size(estimates, truths, "errors");
  if (estimates.empty()) throw ValidationError("errors: empty input");
  double se = 0.0, ae = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = estimates[i] - truths[i];
    se += d * d;
    ae += std::abs(d);
  }
  const auto n = static_cast<double>(estimates.size());
  return {se / n, ae / n};
}

}  // namespace sslfusion::estimation
