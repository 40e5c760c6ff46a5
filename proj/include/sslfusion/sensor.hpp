#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sslfusion/defaults.hpp"

// Case-study data path: barometric height conversion, affine calibration,
// sensor-log ingestion, and a synthetic flight-log generator. Logs are
// immutable after load; all transformations are pure.

namespace sslfusion::sensor {

// Constants of the isothermal barometric formula. The defaults are the
// standard-atmosphere values; height_scale() is R*T_s / (M*g).
struct BarometricConstants {
  double gas_constant = 8.31446;          // R, J/(mol K)
  double sea_level_temperature = 288.15;  // T_s, K
  double molar_mass_air = 0.0289644;      // M, kg/mol
  double gravity = 9.80665;               // g, m/s^2
  double sea_level_pressure = 101325.0;   // P_s, Pa

  double height_scale() const {
    return gas_constant * sea_level_temperature / (molar_mass_air * gravity);
  }
};

// h = K * ln(P_s / P); throws on P <= 0.
double pressure_to_height(double pressure_pa, const BarometricConstants& consts = {});

// Exact inverse: P = P_s * exp(-h / K).
double height_to_pressure(double height_m, const BarometricConstants& consts = {});

// Affine map from raw heights to a reference frame.
struct Calibration {
  double scale = 1.0;
  double offset = 0.0;
  double apply(double raw) const { return scale * raw + offset; }
};

// Ordinary least squares of reference on raw. Requires >= 2 pairs and a
// non-constant raw series.
Calibration calibrate(std::span<const double> raw_heights,
                      std::span<const double> reference_heights);

struct LogRecord {
  double time_s = 0.0;
  double truth_m = 0.0;    // motion-tracking height, treated as ground truth
  double sonar_m = 0.0;
  double pressure_pa = 0.0;
};

struct SensorLog {
  std::vector<LogRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  std::vector<double> times() const;
  std::vector<double> truths() const;
  std::vector<double> sonars() const;
  std::vector<double> pressures() const;
};

// CSV with header "time_s,truth_m,sonar_m,pressure_pa". Rows violating the
// invariants (strictly increasing timestamps, positive pressure, finite
// fields) are rejected with their line number. Write -> read is bit-exact.
SensorLog load_log(const std::filesystem::path& path);
void save_log(const SensorLog& log, const std::filesystem::path& path);

struct Sinusoid {
  double amplitude_m = 0.0;
  double frequency_hz = 0.0;
  double phase_rad = 0.0;
};

struct HoverSegment {
  double start_s = 0.0;
  double duration_s = 0.0;
  double height_m = 0.0;
};

// Smooth flight profile: a mean height plus low-frequency sinusoids, with
// hover segments that pin the height to a constant while active. The
// result is clamped at ground level.
struct TrajectorySpec {
  double mean_height_m = 1.5;
  std::vector<Sinusoid> sinusoids;
  std::vector<HoverSegment> hovers;

  double height_at(double t_s) const;
};

TrajectorySpec default_trajectory();

struct SynthConfig {
  double duration_s = 600.0;
  double sample_rate_hz = 10.0;
  TrajectorySpec trajectory = default_trajectory();
  double sonar_noise_m = 0.29;
  // Chosen so the learned pressure cue ends up with roughly 0.2-0.25 m of
  // error; the corresponding real sensor noise level is not something this
  // generator can claim to reproduce.
  double pressure_noise_pa = 2.5;
  // The field site is not at sea level; truth heights ride on this offset
  // before the pressure conversion, which is what makes calibration
  // necessary downstream.
  double base_altitude_m = 50.0;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

// Deterministic for a fixed config: truth from the trajectory, sonar =
// truth + Gaussian noise, pressure = height_to_pressure(base + truth) +
// Gaussian noise. Uses Pcg32(seed, 0).
SensorLog synthesize_log(const SynthConfig& config);

}  // namespace sslfusion::sensor
