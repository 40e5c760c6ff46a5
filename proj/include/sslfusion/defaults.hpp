#pragma once

#include <cstddef>
#include <cstdint>

// Fixed defaults shared by the library, the CLI, and the test suites.
// Everything seeded is seeded from a constant, never from the clock.

namespace sslfusion {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Monte Carlo verification suite.
inline constexpr std::size_t kDefaultVerifySamples = 10'000;

// Case-study protocol.
inline constexpr int kDefaultNeighbors = 3;
inline constexpr int kDefaultRuns = 100;
inline constexpr double kDefaultTrainFraction = 0.80;
inline constexpr double kDefaultValidationFraction = 0.10;
inline constexpr double kDefaultTestFraction = 0.10;

// Conditional-variance estimation.
inline constexpr double kDefaultWindowLo = -0.05;
inline constexpr double kDefaultWindowHi = 0.05;
inline constexpr double kDefaultCentralPercent = 5.0;
inline constexpr double kVarianceFloor = 1e-9;

// Distribution analysis.
inline constexpr int kDefaultRandomizationReps = 10'000;
inline constexpr int kMinAnalysisValues = 30;
inline constexpr int kMinBins = 3;
inline constexpr int kMaxAutoBins = 50;

}  // namespace sslfusion
