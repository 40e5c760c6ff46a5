#include "sslfusion/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sslfusion/errors.hpp"
#include "sslfusion/estimation.hpp"
#include "sslfusion/stats.hpp"
#include "sslfusion/theory.hpp"

namespace sslfusion::harness {

VerificationRow verify_theory(const ModelParams& params, std::size_t n, std::uint64_t seed,
                              std::uint64_t stream) {
  params.validate();
  if (n < 100) throw ValidationError("verify_theory: n must be >= 100");

  const Dataset ds = draw(params, n, seed, stream);
  const std::vector<double> t = ds.targets();
  const std::vector<double> x_g = ds.primary_cues();
  const std::vector<double> x_f = ds.secondary_cues();

  const estimation::LinearMap f = estimation::fit_linear(x_f, x_g);
  std::vector<double> y_f(n);
  for (std::size_t i = 0; i < n; ++i) y_f[i] = f.predict(x_f[i]);

  const double s_hat = estimation::estimate_conditional_variance_windowed(y_f, x_g);
  estimation::FusionModel model;
  model.sigma_g2_known = params.sigma_g2;
  model.s_hat = s_hat;
  model.regressor = f;

  std::vector<double> sq_primary(n), sq_fused(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = x_g[i] - t[i];
    const double df = estimation::fuse(model, y_f[i], x_g[i]) - t[i];
    sq_primary[i] = dp * dp;
    sq_fused[i] = df * df;
  }

  VerificationRow row;
  row.params = params;
  row.n = n;
  row.a_hat = f.a;
  row.s_hat = s_hat;
  row.mse_primary_empirical = stats::mean(sq_primary);
  row.mse_fused_empirical = stats::mean(sq_fused);
  row.mse_primary_theory = theory::expected_error_primary(params);
  row.mse_fused_theory = theory::expected_error_fused(params);
  row.se_primary = std::sqrt(stats::sample_variance(sq_primary) / static_cast<double>(n));
  row.se_fused = std::sqrt(stats::sample_variance(sq_fused) / static_cast<double>(n));
  return row;
}

std::vector<VerificationRow> reference_table(std::size_t n, std::uint64_t seed) {
  std::vector<VerificationRow> rows;
  rows.reserve(kReferenceParams.size());
  for (std::size_t i = 0; i < kReferenceParams.size(); ++i) {
    // Row i draws from substream i so the rows stay independent.
    rows.push_back(verify_theory(kReferenceParams[i], n, seed, i));
  }
  return rows;
}

void CaseStudyConfig::validate() const {
  if (k < 1) throw ValidationError("CaseStudyConfig: k must be >= 1");
  if (runs < 1) throw ValidationError("CaseStudyConfig: runs must be >= 1");
  const auto frac_ok = [](double f) { return std::isfinite(f) && f > 0.0 && f < 1.0; };
  if (!frac_ok(train_fraction) || !frac_ok(validation_fraction) || !frac_ok(test_fraction)) {
    throw ValidationError("CaseStudyConfig: split fractions must lie in (0, 1)");
  }
  const double total = train_fraction + validation_fraction + test_fraction;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("CaseStudyConfig: split fractions must sum to 1, got " +
                          std::to_string(total));
  }
}

SplitIndices make_split(std::size_t n, double train_fraction, double validation_fraction,
                        double test_fraction, rng::Pcg32& gen) {
  if (n < 3) throw ValidationError("make_split: need at least 3 records");
  (void)test_fraction;  // implied by the other two; validated by the caller

  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  // Fisher-Yates with our own generator keeps the shuffle identical across
  // platforms.
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::uint32_t j = gen.next_below(static_cast<std::uint32_t>(i + 1));
    std::swap(idx[i], idx[j]);
  }

  const auto n_train = static_cast<std::size_t>(static_cast<double>(n) * train_fraction);
  const auto n_val = static_cast<std::size_t>(static_cast<double>(n) * validation_fraction);
  if (n_train == 0 || n_val == 0 || n_train + n_val >= n) {
    throw ValidationError("make_split: fractions leave an empty split");
  }

  SplitIndices split;
  split.train.assign(idx.begin(), idx.begin() + n_train);
  split.validation.assign(idx.begin() + n_train, idx.begin() + n_train + n_val);
  split.test.assign(idx.begin() + n_train + n_val, idx.end());
  return split;
}

namespace {

std::vector<double> gather(std::span<const double> series,
                           std::span<const std::uint32_t> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::uint32_t i : indices) out.push_back(series[i]);
  return out;
}

}  // namespace

RunReport run_case_study(const sensor::SensorLog& log, const CaseStudyConfig& config) {
  config.validate();
  const std::size_t n = log.size();
  const auto min_split = static_cast<std::size_t>(config.k) + 2;
  if (n < 3 * min_split) {
    throw InsufficientDataError("run_case_study: log too short for the split protocol");
  }

  const std::vector<double> truth = log.truths();
  const std::vector<double> sonar = log.sonars();

  // Precompute the raw barometric height; the affine calibration to truth
  // is refit per run on that run's training split.
  std::vector<double> baro_height;
  if (config.primary == PrimaryCue::kBarometer) {
    baro_height.reserve(n);
    for (double p : log.pressures()) {
      baro_height.push_back(sensor::pressure_to_height(p));
    }
  }
  const std::vector<double> raw_secondary =
      config.primary == PrimaryCue::kSonar ? log.pressures() : log.sonars();

  RunReport report;
  report.config = config;
  report.runs.reserve(config.runs);
  std::size_t successes = 0;

  for (int run = 0; run < config.runs; ++run) {
    auto gen = rng::Pcg32::substream(config.seed, static_cast<std::uint64_t>(run));
    const SplitIndices split = make_split(n, config.train_fraction,
                                          config.validation_fraction,
                                          config.test_fraction, gen);
    if (split.train.size() < min_split || split.validation.size() < min_split ||
        split.test.size() < min_split) {
      throw InsufficientDataError("run_case_study: a split has fewer than k + 2 records");
    }

    // Primary cue in meters; the barometer variant is calibrated against
    // truth on the training split only.
    std::vector<double> primary(n);
    if (config.primary == PrimaryCue::kSonar) {
      primary = sonar;
    } else {
      const sensor::Calibration cal = sensor::calibrate(gather(baro_height, split.train),
                                                        gather(truth, split.train));
      for (std::size_t i = 0; i < n; ++i) primary[i] = cal.apply(baro_height[i]);
    }

    // Known primary noise: residual variance against truth on the training
    // split, floored to stay a valid fusion weight in noiseless data.
    const std::vector<double> train_primary = gather(primary, split.train);
    const std::vector<double> train_truth = gather(truth, split.train);
    std::vector<double> residual(train_primary.size());
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual[i] = train_primary[i] - train_truth[i];
    }
    const double sigma_g2 = std::fmax(stats::sample_variance(residual), kVarianceFloor);

    const estimation::KnnRegressor knn = estimation::KnnRegressor::fit(
        gather(raw_secondary, split.train), train_primary, config.k);

    const std::vector<double> val_raw = gather(raw_secondary, split.validation);
    std::vector<double> val_y(val_raw.size());
    for (std::size_t i = 0; i < val_raw.size(); ++i) val_y[i] = knn.predict(val_raw[i]);
    const double s_hat = estimation::estimate_conditional_variance_moments(
        val_y, gather(primary, split.validation));

    estimation::FusionModel model;
    model.sigma_g2_known = sigma_g2;
    model.s_hat = s_hat;
    model.regressor = knn;

    const std::vector<double> test_truth = gather(truth, split.test);
    const std::vector<double> test_primary = gather(primary, split.test);
    const std::vector<double> test_raw = gather(raw_secondary, split.test);
    std::vector<double> test_y(test_raw.size());
    std::vector<double> test_fused(test_raw.size());
    for (std::size_t i = 0; i < test_raw.size(); ++i) {
      test_y[i] = knn.predict(test_raw[i]);
      test_fused[i] = estimation::fuse(model, test_y[i], test_primary[i]);
    }

    CaseStudyRun result;
    result.mae_primary = estimation::errors(test_primary, test_truth).mae;
    result.mae_secondary = estimation::errors(test_y, test_truth).mae;
    result.mae_fused = estimation::errors(test_fused, test_truth).mae;
    if (result.mae_fused < result.mae_primary) ++successes;
    report.runs.push_back(result);
  }

  double sum_p = 0.0, sum_s = 0.0, sum_f = 0.0;
  for (const CaseStudyRun& r : report.runs) {
    sum_p += r.mae_primary;
    sum_s += r.mae_secondary;
    sum_f += r.mae_fused;
  }
  const auto runs = static_cast<double>(report.runs.size());
  report.mean_mae_primary = sum_p / runs;
  report.mean_mae_secondary = sum_s / runs;
  report.mean_mae_fused = sum_f / runs;
  report.success_rate = static_cast<double>(successes) / runs;
  return report;
}

namespace {

// Chi-square of a sample against the normal fitted to its own first two
// moments, over equal-probability bins. The bin of a value is found
// through the fitted CDF directly, so counts always sum to n.
double chi_square_statistic(std::span<const double> values, int bins, double mean,
                            double stddev, std::vector<std::uint64_t>* counts_out) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    const double u = stats::normal_cdf((v - mean) / stddev);
    auto bin = static_cast<long>(u * bins);
    bin = std::clamp<long>(bin, 0, bins - 1);
    ++counts[static_cast<std::size_t>(bin)];
  }
  const double expected = static_cast<double>(values.size()) / bins;
  double chi = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi += d * d / expected;
  }
  if (counts_out != nullptr) *counts_out = std::move(counts);
  return chi;
}

}  // namespace

DistStats analyze_distribution(std::span<const double> values, int bins,
                               int randomization_reps, std::uint64_t seed) {
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(kMinAnalysisValues)) {
    throw ValidationError("analyze_distribution: need at least " +
                          std::to_string(kMinAnalysisValues) + " values, got " +
                          std::to_string(n));
  }
  if (bins == 0) {
    bins = std::clamp<int>(static_cast<int>(n / 50), 5, kMaxAutoBins);
  } else if (bins < kMinBins) {
    throw ValidationError("analyze_distribution: bins must be >= " + std::to_string(kMinBins));
  }
  if (randomization_reps < 1) {
    throw ValidationError("analyze_distribution: randomization reps must be >= 1");
  }

  DistStats out;
  out.n = n;
  out.bins = bins;
  out.randomization_reps = randomization_reps;
  out.mean = stats::mean(values);
  const double variance = stats::sample_variance(values);
  if (!(variance > 0.0)) throw ValidationError("analyze_distribution: constant input");
  out.stddev = std::sqrt(variance);

  out.chi_square = chi_square_statistic(values, bins, out.mean, out.stddev, &out.bin_counts);
  out.bin_edges.reserve(static_cast<std::size_t>(bins) - 1);
  for (int i = 1; i < bins; ++i) {
    out.bin_edges.push_back(out.mean + out.stddev *
                                           stats::normal_quantile(static_cast<double>(i) / bins));
  }

  // Randomization: the same statistic on synthetic standard-normal samples
  // of the same size, each refit to its own moments. The statistic is
  // location-scale free, so standard normals suffice.
  std::vector<double> synthetic(n);
  std::size_t at_least = 0;
  for (int rep = 0; rep < randomization_reps; ++rep) {
    auto gen = rng::Pcg32::substream(seed, static_cast<std::uint64_t>(rep));
    for (double& v : synthetic) v = gen.next_normal();
    const double m = stats::mean(synthetic);
    const double sd = std::sqrt(stats::sample_variance(synthetic));
    const double stat = chi_square_statistic(synthetic, bins, m, sd, nullptr);
    if (stat >= out.chi_square) ++at_least;
  }
  out.p_value = static_cast<double>(at_least) / static_cast<double>(randomization_reps);
  return out;
}

const char* primary_cue_name(PrimaryCue cue) {
  return cue == PrimaryCue::kSonar ? "sonar" : "barometer";
}

}  // namespace sslfusion::harness
