#pragma once

#include <optional>

#include "sslfusion/model.hpp"

// Closed-form expected errors, fusion weights, and favorability conditions
// for the scalar self-supervised fusion model. All functions are pure and
// validate their parameters.

namespace sslfusion::theory {

// Condition under which fusing the learned cue beats the primary cue alone.
enum class Condition {
  kNone,               // fusion is not favorable
  kStrongPrior,        // sigma_t2 <= sigma_g2: favorable for every sigma_f2
  kAccurateSecondary,  // sigma_t2 > sigma_g2 but sigma_f2 is below threshold
};

struct Favorability {
  bool favorable = false;
  Condition condition = Condition::kNone;
};

struct FusionWeights {
  double alpha = 0.0;  // weight on the learned cue y_f
  double beta = 0.0;   // weight on the primary cue x_g; alpha + beta == 1
};

struct TheoryReport {
  ModelParams params;
  double a_star = 0.0;     // asymptotic least-squares slope of f
  double s_star = 0.0;     // asymptotic conditional-variance proxy
  double alpha = 0.0;
  double beta = 0.0;
  double e_primary = 0.0;  // expected squared error of the primary-only estimate
  double e_fused = 0.0;    // expected squared error of the fused estimate
  bool favorable = false;
  Condition condition = Condition::kNone;
  // Critical secondary-cue variance; empty when the strong-prior condition
  // makes fusion favorable for every sigma_f2.
  std::optional<double> sigma_f2_threshold;
  std::optional<double> c_rhs;                // same bound, as the comparison RHS
  std::optional<double> sigma_yf2_threshold;  // bound restated for var(y_f): a^2 * C
};

// Asymptotic slope the least-squares fit of y = a * x_f converges to under
// the generative model: sigma_t2 / (sigma_f2 + sigma_t2).
double slope(const ModelParams& params);

// Conditional variance of the learned cue given the primary cue,
// var(y_f) - cov(y_f, x_g)^2 / var(x_g), evaluated in closed form.
double conditional_variance(const ModelParams& params);

// Algebraically identical factored form; kept as an independent evaluation
// route for cross-checks.
double conditional_variance_factored(const ModelParams& params);

// Expected squared error of the primary-only estimate: exactly sigma_g2.
double expected_error_primary(const ModelParams& params);

// Likelihood-weighted fusion weights alpha = sigma_g2 / (sigma_g2 + s),
// beta = s / (sigma_g2 + s) with s = conditional_variance(params).
FusionWeights fusion_weights(const ModelParams& params);

// Expected squared error of the fused estimate, composed from the slope,
// the conditional-variance proxy, and the resulting weights:
//   (alpha*a + beta - 1)^2 * sigma_t2 + (alpha*a)^2 * sigma_f2 + beta^2 * sigma_g2.
// Single-fraction reductions of this expectation are easy to get wrong, so
// the composed form is used everywhere and is pinned by the root
// cross-check inside sigma_f2_threshold.
double expected_error_fused(const ModelParams& params);

// Whether fusion is expected to beat the primary cue alone, and through
// which condition. Exact ties count as not favorable.
Favorability fusion_favorable(const ModelParams& params);

// Critical sigma_f2 below which fusion is favorable when sigma_t2 > sigma_g2;
// std::nullopt means unbounded (sigma_t2 <= sigma_g2, fusion always helps).
// The closed-form value is cross-validated internally against a bisection
// root of expected_error_fused(sigma_f2) - sigma_g2 to 1e-6 relative;
// disagreement throws NumericError.
std::optional<double> sigma_f2_threshold(double sigma_t2, double sigma_g2);

// The same bound restated for the variance of the learned cue:
// a^2 * C with a evaluated at sigma_f2 = C. Unbounded propagates.
std::optional<double> sigma_yf2_threshold(double sigma_t2, double sigma_g2);

// Posterior-mean estimate of t from both raw cues with full knowledge of
// the generative parameters. Benchmark lower-bound reference only; the
// robot-side path never has the inputs this needs.
double oracle_fusion_estimate(const ModelParams& params, double x_g, double x_f);

TheoryReport report(const ModelParams& params);

const char* condition_name(Condition c);

}  // namespace sslfusion::theory
