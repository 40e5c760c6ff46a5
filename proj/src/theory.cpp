#include "sslfusion/theory.hpp"

#include <cmath>
#include <string>

#include "sslfusion/errors.hpp"

namespace sslfusion::theory {

double slope(const ModelParams& params) {
  params.validate();
  return params.sigma_t2 / (params.sigma_f2 + params.sigma_t2);
}

double conditional_variance(const ModelParams& params) {
  params.validate();
  const double st2 = params.sigma_t2;
  const double tf = params.sigma_t2 + params.sigma_f2;
  const double tg = params.sigma_t2 + params.sigma_g2;
  const double st4 = st2 * st2;
  return st4 / tf - (st4 * st4) / (tf * tf * tg);
}

double conditional_variance_factored(const ModelParams& params) {
  params.validate();
  const double st2 = params.sigma_t2;
  const double sg2 = params.sigma_g2;
  const double sf2 = params.sigma_f2;
  const double tf = st2 + sf2;
  const double tg = st2 + sg2;
  return st2 * st2 * (st2 * sg2 + sf2 * st2 + sf2 * sg2) / (tf * tf * tg);
}

double expected_error_primary(const ModelParams& params) {
  params.validate();
  return params.sigma_g2;
}

FusionWeights fusion_weights(const ModelParams& params) {
  const double s = conditional_variance(params);
  const double total = params.sigma_g2 + s;
  return {params.sigma_g2 / total, s / total};
}

double expected_error_fused(const ModelParams& params) {
  const double a = slope(params);
  const FusionWeights w = fusion_weights(params);
  const double gain = w.alpha * a;          // effective weight on x_f
  const double bias = gain + w.beta - 1.0;  // shortfall of the total weight on t
  return bias * bias * params.sigma_t2 + gain * gain * params.sigma_f2 +
         w.beta * w.beta * params.sigma_g2;
}

namespace {

void validate_pair(double sigma_t2, double sigma_g2) {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma_t2) || !positive(sigma_g2)) {
    throw ValidationError("sigma_f2_threshold: variances must be finite and > 0");
  }
}

// Closed-form critical secondary variance for sigma_t2 > sigma_g2.
double threshold_closed_form(double st2, double sg2) {
  const double st4 = st2 * st2;
  const double st6 = st4 * st2;
  const double sg4 = sg2 * sg2;
  const double radicand = 17.0 * sg4 * st4 * st4 + 18.0 * sg2 * st4 * st4 * st2 +
                          st6 * st6;
  const double numerator = 2.0 * sg4 * st2 + 3.0 * st4 * sg2 + st6 + std::sqrt(radicand);
  return -0.5 * numerator / (sg4 - st4);
}

// Root of expected_error_fused(sigma_f2) = sigma_g2, bracketed from below
// and refined by bisection. Only called when sigma_t2 > sigma_g2, where the
// fused error crosses sigma_g2 exactly once.
double threshold_by_bisection(double st2, double sg2, double hint) {
  const auto excess = [&](double sf2) {
    return expected_error_fused({st2, sg2, sf2}) - sg2;
  };

  double lo = 1e-12 * st2;
  if (excess(lo) >= 0.0) throw NumericError("sigma_f2_threshold: no favorable bracket");
  double hi = std::fmax(2.0 * hint, st2);
  int doublings = 0;
  while (excess(hi) <= 0.0) {
    hi *= 2.0;
    if (++doublings > 200) throw NumericError("sigma_f2_threshold: no crossing found");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> sigma_f2_threshold(double sigma_t2, double sigma_g2) {
  validate_pair(sigma_t2, sigma_g2);
  if (sigma_t2 <= sigma_g2) return std::nullopt;  // strong prior: no upper bound

  const double closed = threshold_closed_form(sigma_t2, sigma_g2);
  const double root = threshold_by_bisection(sigma_t2, sigma_g2, closed);
  if (std::abs(root - closed) > 1e-6 * std::abs(closed)) {
    throw NumericError("sigma_f2_threshold: closed form " + std::to_string(closed) +
                       " disagrees with fused-error root " + std::to_string(root));
  }
  return closed;
}

std::optional<double> sigma_yf2_threshold(double sigma_t2, double sigma_g2) {
  const auto c = sigma_f2_threshold(sigma_t2, sigma_g2);
  if (!c) return std::nullopt;
  const double a = sigma_t2 / (*c + sigma_t2);  // slope at the critical variance
  return a * a * *c;
}

Favorability fusion_favorable(const ModelParams& params) {
  params.validate();
  if (params.sigma_t2 <= params.sigma_g2) return {true, Condition::kStrongPrior};
  const auto c = sigma_f2_threshold(params.sigma_t2, params.sigma_g2);
  if (params.sigma_f2 < *c) return {true, Condition::kAccurateSecondary};
  return {false, Condition::kNone};
}

double oracle_fusion_estimate(const ModelParams& params, double x_g, double x_f) {
  params.validate();
  const double st2 = params.sigma_t2;
  const double sg2 = params.sigma_g2;
  const double sf2 = params.sigma_f2;
  // Posterior mean under the full model; equivalently precision-weighted
  // averaging of x_g, x_f, and the zero prior mean.
  const double denom = sg2 * sf2 + st2 * sf2 + st2 * sg2;
  return st2 * (sf2 * x_g + sg2 * x_f) / denom;
}

TheoryReport report(const ModelParams& params) {
  TheoryReport r;
  r.params = params;
  r.a_star = slope(params);
  r.s_star = conditional_variance(params);
  const FusionWeights w = fusion_weights(params);
  r.alpha = w.alpha;
  r.beta = w.beta;
  r.e_primary = expected_error_primary(params);
  r.e_fused = expected_error_fused(params);
  const Favorability fav = fusion_favorable(params);
  r.favorable = fav.favorable;
  r.condition = fav.condition;
  r.sigma_f2_threshold = sigma_f2_threshold(params.sigma_t2, params.sigma_g2);
  r.c_rhs = r.sigma_f2_threshold;
  r.sigma_yf2_threshold = sigma_yf2_threshold(params.sigma_t2, params.sigma_g2);
  return r;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::kStrongPrior:
      return "strong_prior";
    case Condition::kAccurateSecondary:
      return "accurate_secondary";
    case Condition::kNone:
      return "none";
  }
  return "none";
}

}  // namespace sslfusion::theory
