#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sslfusion/defaults.hpp"
#include "sslfusion/model.hpp"
#include "sslfusion/rng.hpp"
#include "sslfusion/sensor.hpp"

// Experiment suites: Monte Carlo verification of the closed forms, the
// shuffled-split case-study protocol, and the distribution analysis.
// Every suite is deterministic for a fixed seed; run r of a suite draws
// from rng substream (seed, r), so aggregation is order-independent.

namespace sslfusion::harness {

// One verification experiment: empirical mean squared errors of the
// primary-only and the learned-fusion estimates next to their closed-form
// predictions, with Monte Carlo standard errors of the empirical means.
struct VerificationRow {
  ModelParams params;
  std::size_t n = 0;
  double mse_primary_empirical = 0.0;
  double mse_primary_theory = 0.0;
  double mse_fused_empirical = 0.0;
  double mse_fused_theory = 0.0;
  double se_primary = 0.0;
  double se_fused = 0.0;
  double a_hat = 0.0;  // fitted slope
  double s_hat = 0.0;  // windowed conditional-variance estimate
};

// Draws a dataset, fits the secondary-to-primary slope by least squares,
// estimates the conditional-variance proxy in the default window, fuses,
// and scores against the latent targets. n must be >= 100.
VerificationRow verify_theory(const ModelParams& params, std::size_t n, std::uint64_t seed,
                              std::uint64_t stream = 0);

// The four built-in reference parameter sets used by the verification
// suite and the CLI `table1` subcommand.
inline constexpr std::array<ModelParams, 4> kReferenceParams{
    ModelParams{6.25, 1.0, 1.0},
    ModelParams{6.25, 1.0, 16.0},
    ModelParams{0.25, 1.0, 1.0},
    ModelParams{0.25, 1.0, 100.0},
};

// verify_theory over kReferenceParams; row i uses rng substream (seed, i).
std::vector<VerificationRow> reference_table(std::size_t n = kDefaultVerifySamples,
                                             std::uint64_t seed = kDefaultSeed);

enum class PrimaryCue { kSonar, kBarometer };

struct CaseStudyConfig {
  PrimaryCue primary = PrimaryCue::kSonar;
  int k = kDefaultNeighbors;
  double train_fraction = kDefaultTrainFraction;
  double validation_fraction = kDefaultValidationFraction;
  double test_fraction = kDefaultTestFraction;
  int runs = kDefaultRuns;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;  // fractions positive and summing to 1, runs >= 1, k >= 1
};

struct CaseStudyRun {
  double mae_primary = 0.0;
  double mae_secondary = 0.0;
  double mae_fused = 0.0;
};

struct RunReport {
  CaseStudyConfig config;
  std::vector<CaseStudyRun> runs;
  double mean_mae_primary = 0.0;
  double mean_mae_secondary = 0.0;
  double mean_mae_fused = 0.0;
  // Fraction of runs whose fused MAE is strictly below the primary MAE;
  // ties count as failures.
  double success_rate = 0.0;
};

// Disjoint shuffled index split; sizes are floor(n * fraction) for train
// and validation, remainder for test.
struct SplitIndices {
  std::vector<std::uint32_t> train;
  std::vector<std::uint32_t> validation;
  std::vector<std::uint32_t> test;
};

SplitIndices make_split(std::size_t n, double train_fraction, double validation_fraction,
                        double test_fraction, rng::Pcg32& gen);

// Per run: reshuffle the split; build the primary cue (sonar directly, or
// barometric height calibrated to truth on the training split); estimate
// the primary noise variance against truth on the training split; fit the
// k-nearest-neighbor map from the raw secondary signal to the primary cue
// on the training split; estimate the conditional-variance proxy on the
// validation split from observed variables only; fuse and score MAEs on
// the test split.
RunReport run_case_study(const sensor::SensorLog& log, const CaseStudyConfig& config);

// Distribution statistics versus a normal fitted to the same mean and
// standard deviation: a chi-square statistic over equal-probability bins
// and a randomization p-value (fraction of synthetic normal samples of the
// same size whose statistic is at least as large).
struct DistStats {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  int bins = 0;
  double chi_square = 0.0;
  double p_value = 0.0;
  int randomization_reps = 0;
  std::vector<double> bin_edges;        // interior edges; outer bins are unbounded
  std::vector<std::uint64_t> bin_counts;  // sums to n
};

// bins == 0 selects max(5, n/50) capped at 50; explicit values must be >= 3.
// Requires at least 30 values and a non-constant input.
DistStats analyze_distribution(std::span<const double> values, int bins = 0,
                               int randomization_reps = kDefaultRandomizationReps,
                               std::uint64_t seed = kDefaultSeed);

const char* primary_cue_name(PrimaryCue cue);

}  // namespace sslfusion::harness
