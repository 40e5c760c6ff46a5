#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <vector>

#include "sslfusion/errors.hpp"
#include "sslfusion/rng.hpp"
#include "sslfusion/sensor.hpp"
#include "sslfusion/stats.hpp"

using namespace sslfusion;
using namespace sslfusion::sensor;

namespace {

struct TempPath {
  std::filesystem::path path;
  explicit TempPath(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("barometric conversion at reference points") {
  const BarometricConstants consts{};
  CHECK(pressure_to_height(consts.sea_level_pressure) == 0.0);

  // Independent evaluation: K = R*T_s / (M*g), h = K * ln(P_s / P).
  const double k_ref = 8.31446 * 288.15 / (0.0289644 * 9.80665);
  CHECK(k_ref == doctest::Approx(8434.5).epsilon(1e-4));
  CHECK(pressure_to_height(100000.0) ==
        doctest::Approx(k_ref * std::log(101325.0 / 100000.0)).epsilon(1e-12));
  CHECK(std::abs(pressure_to_height(100000.0) - 111.0) < 0.1);

  CHECK(pressure_to_height(2.0 * consts.sea_level_pressure) < 0.0);
  CHECK_THROWS_AS(pressure_to_height(0.0), ValidationError);
  CHECK_THROWS_AS(pressure_to_height(-5.0), ValidationError);
}

TEST_CASE("height to pressure round-trips to machine precision") {
  for (double h = 0.0; h <= 100.0; h += 2.5) {
    const double back = pressure_to_height(height_to_pressure(h));
    CHECK(std::abs(back - h) <= 1e-12 * std::max(1.0, std::abs(h)));
  }
}

TEST_CASE("calibration") {
  const std::vector<double> raw{0.0, 1.0};
  const std::vector<double> ref{3.0, 5.0};
  const Calibration cal = calibrate(raw, ref);
  CHECK(cal.scale == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cal.offset == doctest::Approx(3.0).epsilon(1e-12));

  const std::vector<double> same{1.0, 2.0, 3.0};
  const Calibration ident = calibrate(same, same);
  CHECK(ident.scale == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ident.offset == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> flat{2.0, 2.0};
  CHECK_THROWS_AS(calibrate(flat, ref), ValidationError);
}

TEST_CASE("calibrating calibrated data is the identity, residuals have zero mean") {
  rng::Pcg32 gen(606, 0);
  std::vector<double> raw(500), ref(500);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = 50.0 + 2.0 * gen.next_normal();
    ref[i] = 1.8 * raw[i] - 88.0 + 0.3 * gen.next_normal();
  }
  const Calibration cal = calibrate(raw, ref);
  std::vector<double> mapped(raw.size()), residual(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    mapped[i] = cal.apply(raw[i]);
    residual[i] = mapped[i] - ref[i];
  }
  CHECK(std::abs(stats::mean(residual)) < 1e-10);  // normal equations

  const Calibration again = calibrate(mapped, ref);
  CHECK(again.scale == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(again.offset) < 1e-9);
}

TEST_CASE("synthetic log is deterministic and honors its noise levels") {
  SynthConfig config;
  config.duration_s = 2000.0;
  config.sample_rate_hz = 10.0;
  config.sonar_noise_m = 0.29;
  config.seed = 12;

  const SensorLog a = synthesize_log(config);
  const SensorLog b = synthesize_log(config);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 20000);
  for (std::size_t i = 0; i < a.size(); i += 499) {
    CHECK(a.records[i].sonar_m == b.records[i].sonar_m);
    CHECK(a.records[i].pressure_pa == b.records[i].pressure_pa);
  }

  std::vector<double> sonar_err(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sonar_err[i] = a.records[i].sonar_m - a.records[i].truth_m;
  }
  const double sd = std::sqrt(stats::sample_variance(sonar_err));
  CHECK(std::abs(sd - 0.29) / 0.29 < 0.05);

  // Mean absolute deviation of a centered normal is sigma * sqrt(2/pi).
  double mae = 0.0;
  for (double e : sonar_err) mae += std::abs(e);
  mae /= static_cast<double>(sonar_err.size());
  CHECK(mae == doctest::Approx(0.29 * std::sqrt(2.0 / std::numbers::pi)).epsilon(0.05));
}

TEST_CASE("zero-noise log round-trips truth through pressure and calibration") {
  SynthConfig config;
  config.duration_s = 60.0;
  config.sonar_noise_m = 0.0;
  config.pressure_noise_pa = 0.0;
  const SensorLog log = synthesize_log(config);

  std::vector<double> baro(log.size()), truth(log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    baro[i] = pressure_to_height(log.records[i].pressure_pa);
    truth[i] = log.records[i].truth_m;
    CHECK(log.records[i].sonar_m == truth[i]);
  }
  const Calibration cal = calibrate(baro, truth);
  for (std::size_t i = 0; i < log.size(); ++i) {
    CHECK(std::abs(cal.apply(baro[i]) - truth[i]) < 1e-9);
  }
}

TEST_CASE("trajectory respects hover segments and the ground") {
  TrajectorySpec spec = default_trajectory();
  spec.hovers = {{10.0, 5.0, 0.7}};
  CHECK(spec.height_at(12.0) == 0.7);
  CHECK(spec.height_at(10.0) == 0.7);
  CHECK(spec.height_at(15.0) != 0.7);  // segment end is exclusive

  TrajectorySpec deep;
  deep.mean_height_m = -5.0;
  CHECK(deep.height_at(3.0) == 0.0);  // clamped at ground level
}

TEST_CASE("log csv round-trip is bit-exact") {
  SynthConfig config;
  config.duration_s = 30.0;
  const SensorLog log = synthesize_log(config);
  TempPath tmp("sslfusion_log_roundtrip.csv");
  save_log(log, tmp.path);
  const SensorLog back = load_log(tmp.path);
  REQUIRE(back.size() == log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    CHECK(back.records[i].time_s == log.records[i].time_s);
    CHECK(back.records[i].truth_m == log.records[i].truth_m);
    CHECK(back.records[i].sonar_m == log.records[i].sonar_m);
    CHECK(back.records[i].pressure_pa == log.records[i].pressure_pa);
  }
}

TEST_CASE("log validation rejects bad rows with line numbers") {
  TempPath tmp("sslfusion_log_bad.csv");

  const auto write_file = [&](const char* body) {
    std::FILE* f = std::fopen(tmp.path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(body, f);
    std::fclose(f);
  };

  write_file("time_s,truth_m,sonar_m,pressure_pa\n0,1,1,101000\n0,1,1,101000\n");
  CHECK_THROWS_WITH_AS(load_log(tmp.path), doctest::Contains(":3:"), ParseError);

  write_file("time_s,truth_m,sonar_m,pressure_pa\n0,1,1,-5\n");
  CHECK_THROWS_WITH_AS(load_log(tmp.path), doctest::Contains("pressure"), ParseError);

  write_file("time_s,truth_m,sonar_m,pressure_pa\n0,1,1\n");
  CHECK_THROWS_AS(load_log(tmp.path), ParseError);

  write_file("wrong,header\n");
  CHECK_THROWS_AS(load_log(tmp.path), ParseError);
}

TEST_CASE("synth config validation") {
  SynthConfig config;
  config.duration_s = -1.0;
  CHECK_THROWS_AS(synthesize_log(config), ValidationError);

  config = SynthConfig{};
  config.sonar_noise_m = -0.1;
  CHECK_THROWS_AS(synthesize_log(config), ValidationError);

  config = SynthConfig{};
  config.sample_rate_hz = 0.0;
  CHECK_THROWS_AS(synthesize_log(config), ValidationError);
}
