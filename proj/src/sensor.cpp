#include "sslfusion/sensor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sslfusion/errors.hpp"
#include "sslfusion/estimation.hpp"
#include "sslfusion/rng.hpp"
#include "csv_util.hpp"

namespace sslfusion::sensor {

double pressure_to_height(double pressure_pa, const BarometricConstants& consts) {
  if (!(pressure_pa > 0.0) || !std::isfinite(pressure_pa)) {
    throw ValidationError("pressure_to_height: pressure must be finite and > 0, got " +
                          std::to_string(pressure_pa));
  }
  return consts.height_scale() * std::log(consts.sea_level_pressure / pressure_pa);
}

double height_to_pressure(double height_m, const BarometricConstants& consts) {
  if (!std::isfinite(height_m)) throw ValidationError("height_to_pressure: non-finite height");
  return consts.sea_level_pressure * std::exp(-height_m / consts.height_scale());
}

Calibration calibrate(std::span<const double> raw_heights,
                      std::span<const double> reference_heights) {
  const estimation::LinearMap fit = estimation::fit_affine(raw_heights, reference_heights);
  return {fit.a, fit.b};
}

std::vector<double> SensorLog::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const LogRecord& r : records) out.push_back(r.time_s);
  return out;
}

std::vector<double> SensorLog::truths() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const LogRecord& r : records) out.push_back(r.truth_m);
  return out;
}

std::vector<double> SensorLog::sonars() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const LogRecord& r : records) out.push_back(r.sonar_m);
  return out;
}

std::vector<double> SensorLog::pressures() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const LogRecord& r : records) out.push_back(r.pressure_pa);
  return out;
}

namespace {
constexpr char kLogHeader[] = "time_s,truth_m,sonar_m,pressure_pa";
}

SensorLog load_log(const std::filesystem::path& path) {
  const std::string file = path.string();
  auto in = csv::open_input(file);

  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || csv::chomp(line) != kLogHeader) {
    throw ParseError(file, lineno, std::string("expected header '") + kLogHeader + "'");
  }

  SensorLog log;
  double prev_time = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = csv::chomp(line);
    if (row.empty()) continue;
    const auto fields = csv::split_fields(row);
    if (fields.size() != 4) throw ParseError(file, lineno, "expected 4 fields");
    LogRecord r;
    r.time_s = csv::parse_double(fields[0], file, lineno);
    r.truth_m = csv::parse_double(fields[1], file, lineno);
    r.sonar_m = csv::parse_double(fields[2], file, lineno);
    r.pressure_pa = csv::parse_double(fields[3], file, lineno);
    if (!std::isfinite(r.time_s) || !std::isfinite(r.truth_m) || !std::isfinite(r.sonar_m) ||
        !std::isfinite(r.pressure_pa)) {
      throw ParseError(file, lineno, "non-finite field");
    }
    if (!(r.time_s > prev_time)) {
      throw ParseError(file, lineno, "timestamps must be strictly increasing");
    }
    if (!(r.pressure_pa > 0.0)) {
      throw ParseError(file, lineno, "pressure must be > 0");
    }
    prev_time = r.time_s;
    log.records.push_back(r);
  }
  return log;
}

void save_log(const SensorLog& log, const std::filesystem::path& path) {
  auto out = csv::open_output(path.string());
  out << kLogHeader << '\n';
  for (const LogRecord& r : log.records) {
    out << csv::format_double(r.time_s) << ',' << csv::format_double(r.truth_m) << ','
        << csv::format_double(r.sonar_m) << ',' << csv::format_double(r.pressure_pa) << '\n';
  }
}

double TrajectorySpec::height_at(double t_s) const {
  for (const HoverSegment& h : hovers) {
    if (t_s >= h.start_s && t_s < h.start_s + h.duration_s) {
      return std::fmax(0.0, h.height_m);
    }
  }
  double height = mean_height_m;
  for (const Sinusoid& s : sinusoids) {
    height += s.amplitude_m *
              std::sin(2.0 * std::numbers::pi * s.frequency_hz * t_s + s.phase_rad);
  }
  return std::fmax(0.0, height);
}

TrajectorySpec default_trajectory() {
  TrajectorySpec spec;
  spec.mean_height_m = 1.5;
  spec.sinusoids = {{0.80, 0.011, 0.0}, {0.35, 0.029, 1.3}, {0.15, 0.053, 4.0}};
  spec.hovers = {{120.0, 30.0, 0.8}, {420.0, 30.0, 2.2}};
  return spec;
}

void SynthConfig::validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw ValidationError("SynthConfig:runtime must be > 0");
  }
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw ValidationError("SynthConfig: sample rate must be > 0");
  }
  if (!(sonar_noise_m >= 0.0) || !std::isfinite(sonar_noise_m)) {
    throw ValidationError("SynthConfig: sonar noise must be >= 0");
  }
  if (!(pressure_noise_pa >= 0.0) || !std::isfinite(pressure_noise_pa)) {
    throw ValidationError("SynthConfig: pressure noise must be >= 0");
  }
  if (!std::isfinite(base_altitude_m)) {
    throw ValidationError("SynthConfig: base altitude must be finite");
  }
  for (const Sinusoid& s : trajectory.sinusoids) {
    if (!std::isfinite(s.amplitude_m) || !std::isfinite(s.frequency_hz) ||
        !std::isfinite(s.phase_rad)) {
      throw ValidationError("SynthConfig: non-finite sinusoid");
    }
  }
  for (const HoverSegment& h : trajectory.hovers) {
    if (!std::isfinite(h.start_s) || !(h.duration_s >= 0.0) || !std::isfinite(h.height_m)) {
      throw ValidationError("SynthConfig: invalid hover segment");
    }
  }
}

SensorLog synthesize_log(const SynthConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.duration_s * config.sample_rate_hz);
  if (n < 1) throw ValidationError("synthesize_log: configuration yields no samples");

  const BarometricConstants consts{};
  rng::Pcg32 gen(config.seed, 0);
  SensorLog log;
  log.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LogRecord r;
    r.time_s = static_cast<double>(i) / config.sample_rate_hz;
    r.truth_m = config.trajectory.height_at(r.time_s);
    r.sonar_m = r.truth_m + config.sonar_noise_m * gen.next_normal();
    r.pressure_pa = height_to_pressure(config.base_altitude_m + r.truth_m, consts) +
                    config.pressure_noise_pa * gen.next_normal();
    if (!(r.pressure_pa > 0.0)) {
      throw ValidationError("synthesize_log: pressure noise drove a sample below 0 Pa");
    }
    log.records.push_back(r);
  }
  return log;
}

}  // namespace sslfusion::sensor
