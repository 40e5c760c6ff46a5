#include "sslfusion/json_io.hpp"

#include <fstream>
#include <set>

#include "sslfusion/errors.hpp"

namespace sslfusion::json_io {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.find(key) == allowed.end()) {
      throw ValidationError(context + ": unknown key '" + key + "'");
    }
  }
}

json optional_threshold(const std::optional<double>& v) {
  if (v) return *v;
  return "unbounded";
}

}  // namespace

json to_json(const ModelParams& params) {
  return {{"sigma_t2", params.sigma_t2},
          {"sigma_g2", params.sigma_g2},
          {"sigma_f2", params.sigma_f2}};
}

ModelParams model_params_from_json(const json& j) {
  reject_unknown_keys(j, {"sigma_t2", "sigma_g2", "sigma_f2"}, "params");
  ModelParams p;
  try {
    p.sigma_t2 = j.at("sigma_t2").get<double>();
    p.sigma_g2 = j.at("sigma_g2").get<double>();
    p.sigma_f2 = j.at("sigma_f2").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("params: ") + e.what());
  }
  p.validate();
  return p;
}

json to_json(const theory::TheoryReport& report) {
  return {{"schema", kTheorySchema},
          {"params", to_json(report.params)},
          {"a_star", report.a_star},
          {"s_star", report.s_star},
          {"alpha", report.alpha},
          {"beta", report.beta},
          {"e_primary", report.e_primary},
          {"e_fused", report.e_fused},
          {"favorable", report.favorable},
          {"condition", theory::condition_name(report.condition)},
          {"sigma_f2_threshold", optional_threshold(report.sigma_f2_threshold)},
          {"c_rhs", optional_threshold(report.c_rhs)},
          {"sigma_yf2_threshold", optional_threshold(report.sigma_yf2_threshold)}};
}

json to_json(const harness::VerificationRow& row) {
  return {{"params", to_json(row.params)},
          {"n", row.n},
          {"mse_primary_empirical", row.mse_primary_empirical},
          {"mse_primary_theory", row.mse_primary_theory},
          {"mse_fused_empirical", row.mse_fused_empirical},
          {"mse_fused_theory", row.mse_fused_theory},
          {"se_primary", row.se_primary},
          {"se_fused", row.se_fused},
          {"a_hat", row.a_hat},
          {"s_hat", row.s_hat}};
}

json verification_report(const std::vector<harness::VerificationRow>& rows, std::size_t n,
                         std::uint64_t seed) {
  json array = json::array();
  for (const auto& row : rows) array.push_back(to_json(row));
  return {{"schema", kVerificationSchema}, {"n", n}, {"seed", seed}, {"rows", array}};
}

json to_json(const harness::CaseStudyConfig& config) {
  return {{"primary", harness::primary_cue_name(config.primary)},
          {"k", config.k},
          {"train_fraction", config.train_fraction},
          {"validation_fraction", config.validation_fraction},
          {"test_fraction", config.test_fraction},
          {"runs", config.runs},
          {"seed", config.seed}};
}

harness::CaseStudyConfig case_study_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"primary", "k", "train_fraction", "validation_fraction",
                       "test_fraction", "runs", "seed"},
                      "case-study config");
  harness::CaseStudyConfig config;
  try {
    if (j.contains("primary")) {
      const auto name = j.at("primary").get<std::string>();
      if (name == "sonar") {
        config.primary = harness::PrimaryCue::kSonar;
      } else if (name == "barometer") {
        config.primary = harness::PrimaryCue::kBarometer;
      } else {
        throw ValidationError("case-study config: primary must be 'sonar' or 'barometer'");
      }
    }
    config.k = j.value("k", config.k);
    config.train_fraction = j.value("train_fraction", config.train_fraction);
    config.validation_fraction = j.value("validation_fraction", config.validation_fraction);
    config.test_fraction = j.value("test_fraction", config.test_fraction);
    config.runs = j.value("runs", config.runs);
    config.seed = j.value("seed", config.seed);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("case-study config: ") + e.what());
  }
  config.validate();
  return config;
}

json to_json(const harness::RunReport& report) {
  json runs = json::array();
  for (const auto& run : report.runs) {
    runs.push_back({{"mae_primary", run.mae_primary},
                    {"mae_secondary", run.mae_secondary},
                    {"mae_fused", run.mae_fused}});
  }
  return {{"schema", kCaseStudySchema},
          {"config", to_json(report.config)},
          {"runs", runs},
          {"mean_mae_primary", report.mean_mae_primary},
          {"mean_mae_secondary", report.mean_mae_secondary},
          {"mean_mae_fused", report.mean_mae_fused},
          {"success_rate", report.success_rate}};
}

json to_json(const harness::DistStats& stats) {
  return {{"schema", kDistStatsSchema},
          {"n", stats.n},
          {"mean", stats.mean},
          {"stddev", stats.stddev},
          {"bins", stats.bins},
          {"chi_square", stats.chi_square},
          {"p_value", stats.p_value},
          {"randomization_reps", stats.randomization_reps},
          {"bin_edges", stats.bin_edges},
          {"bin_counts", stats.bin_counts}};
}

json to_json(const sensor::SynthConfig& config) {
  json sinusoids = json::array();
  for (const auto& s : config.trajectory.sinusoids) {
    sinusoids.push_back({{"amplitude_m", s.amplitude_m},
                         {"frequency_hz", s.frequency_hz},
                         {"phase_rad", s.phase_rad}});
  }
  json hovers = json::array();
  for (const auto& h : config.trajectory.hovers) {
    hovers.push_back({{"start_s", h.start_s},
                      {"duration_s", h.duration_s},
                      {"height_m", h.height_m}});
  }
  return {{"schema", kSynthConfigSchema},
          {"duration_s", config.duration_s},
          {"sample_rate_hz", config.sample_rate_hz},
          {"trajectory",
           {{"mean_height_m", config.trajectory.mean_height_m},
            {"sinusoids", sinusoids},
            {"hovers", hovers}}},
          {"sonar_noise_m", config.sonar_noise_m},
          {"pressure_noise_pa", config.pressure_noise_pa},
          {"base_altitude_m", config.base_altitude_m},
          {"seed", config.seed}};
}

sensor::SynthConfig synth_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"schema", "duration_s", "sample_rate_hz", "trajectory",
                       "sonar_noise_m", "pressure_noise_pa", "base_altitude_m", "seed"},
                      "synth config");
  sensor::SynthConfig config;
  try {
    config.duration_s = j.value("duration_s", config.duration_s);
    config.sample_rate_hz = j.value("sample_rate_hz", config.sample_rate_hz);
    config.sonar_noise_m = j.value("sonar_noise_m", config.sonar_noise_m);
    config.pressure_noise_pa = j.value("pressure_noise_pa", config.pressure_noise_pa);
    config.base_altitude_m = j.value("base_altitude_m", config.base_altitude_m);
    config.seed = j.value("seed", config.seed);
    if (j.contains("trajectory")) {
      const json& t = j.at("trajectory");
      reject_unknown_keys(t, {"mean_height_m", "sinusoids", "hovers"}, "trajectory");
      sensor::TrajectorySpec spec;
      spec.mean_height_m = t.value("mean_height_m", spec.mean_height_m);
      if (t.contains("sinusoids")) {
        spec.sinusoids.clear();
        for (const json& s : t.at("sinusoids")) {
          reject_unknown_keys(s, {"amplitude_m", "frequency_hz", "phase_rad"}, "sinusoid");
          spec.sinusoids.push_back({s.value("amplitude_m", 0.0), s.value("frequency_hz", 0.0),
                                    s.value("phase_rad", 0.0)});
        }
      } else {
        spec.sinusoids = sensor::default_trajectory().sinusoids;
      }
      if (t.contains("hovers")) {
        spec.hovers.clear();
        for (const json& h : t.at("hovers")) {
          reject_unknown_keys(h, {"start_s", "duration_s", "height_m"}, "hover");
          spec.hovers.push_back(
              {h.value("start_s", 0.0), h.value("duration_s", 0.0), h.value("height_m", 0.0)});
        }
      } else {
        spec.hovers = sensor::default_trajectory().hovers;
      }
      config.trajectory = spec;
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("synth config: ") + e.what());
  }
  config.validate();
  return config;
}

json to_json(const estimation::FusionModel& model) {
  json regressor;
  if (const auto* linear = std::get_if<estimation::LinearMap>(&model.regressor)) {
    regressor = {{"type", "linear"}, {"a", linear->a}, {"b", linear->b}};
  } else {
    const auto& knn = std::get<estimation::KnnRegressor>(model.regressor);
    regressor = {{"type", "knn"},
                 {"k", knn.k()},
                 {"inputs", knn.training_inputs()},
                 {"targets", knn.training_targets()}};
  }
  return {{"schema", kFusionModelSchema},
          {"sigma_g2_known", model.sigma_g2_known},
          {"s_hat", model.s_hat},
          {"regressor", regressor}};
}

estimation::FusionModel fusion_model_from_json(const json& j) {
  reject_unknown_keys(j, {"schema", "sigma_g2_known", "s_hat", "regressor"}, "fusion model");
  estimation::FusionModel model;
  try {
    model.sigma_g2_known = j.at("sigma_g2_known").get<double>();
    model.s_hat = j.at("s_hat").get<double>();
    const json& r = j.at("regressor");
    const auto type = r.at("type").get<std::string>();
    if (type == "linear") {
      reject_unknown_keys(r, {"type", "a", "b"}, "regressor");
      model.regressor = estimation::LinearMap{r.at("a").get<double>(), r.at("b").get<double>()};
    } else if (type == "knn") {
      reject_unknown_keys(r, {"type", "k", "inputs", "targets"}, "regressor");
      const auto inputs = r.at("inputs").get<std::vector<double>>();
      const auto targets = r.at("targets").get<std::vector<double>>();
      model.regressor =
          estimation::KnnRegressor::fit(inputs, targets, r.at("k").get<int>());
    } else {
      throw ValidationError("fusion model: regressor type must be 'linear' or 'knn'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("fusion model: ") + e.what());
  }
  model.validate();
  return model;
}

std::string dump_report(const json& j) {
  return j.dump(2) + "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

}  // namespace sslfusion::json_io
