#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sslfusion/errors.hpp"
#include "sslfusion/json_io.hpp"

using namespace sslfusion;
using nlohmann::json;

TEST_CASE("theory report json carries the schema and both threshold spellings") {
  const json j = json_io::to_json(theory::report({6.25, 1.0, 1.0}));
  CHECK(j.at("schema") == "sslfusion.theory/1");
  CHECK(j.at("favorable") == true);
  CHECK(j.at("condition") == "accurate_secondary");
  CHECK(j.at("sigma_f2_threshold").get<double>() == doctest::Approx(11.573).epsilon(1e-3));
  CHECK(j.at("c_rhs") == j.at("sigma_f2_threshold"));

  const json u = json_io::to_json(theory::report({0.25, 1.0, 1.0}));
  CHECK(u.at("sigma_f2_threshold") == "unbounded");
  CHECK(u.at("sigma_yf2_threshold") == "unbounded");
  CHECK(u.at("condition") == "strong_prior");
}

TEST_CASE("model params round-trip and reject unknown keys") {
  const ModelParams p{1.5, 2.5, 3.5};
  const ModelParams back = json_io::model_params_from_json(json_io::to_json(p));
  CHECK(back.sigma_t2 == p.sigma_t2);
  CHECK(back.sigma_g2 == p.sigma_g2);
  CHECK(back.sigma_f2 == p.sigma_f2);

  json bad = json_io::to_json(p);
  bad["sigma_q2"] = 1.0;
  CHECK_THROWS_WITH_AS(json_io::model_params_from_json(bad), doctest::Contains("sigma_q2"),
                       ValidationError);
  CHECK_THROWS_AS(json_io::model_params_from_json(json{{"sigma_t2", 1.0}}), ValidationError);
  CHECK_THROWS_AS(
      json_io::model_params_from_json(json{{"sigma_t2", -1.0}, {"sigma_g2", 1.0}, {"sigma_f2", 1.0}}),
      ValidationError);
}

TEST_CASE("case-study config round-trips and rejects typos") {
  harness::CaseStudyConfig config;
  config.primary = harness::PrimaryCue::kBarometer;
  config.k = 5;
  config.runs = 17;
  config.seed = 99;

  const auto back = json_io::case_study_config_from_json(json_io::to_json(config));
  CHECK(back.primary == harness::PrimaryCue::kBarometer);
  CHECK(back.k == 5);
  CHECK(back.runs == 17);
  CHECK(back.seed == 99);

  json j = json_io::to_json(config);
  j["neighbours"] = 4;
  CHECK_THROWS_WITH_AS(json_io::case_study_config_from_json(j), doctest::Contains("neighbours"),
                       ValidationError);

  json bad_primary = json_io::to_json(config);
  bad_primary["primary"] = "lidar";
  CHECK_THROWS_AS(json_io::case_study_config_from_json(bad_primary), ValidationError);

  json bad_fracs = json_io::to_json(config);
  bad_fracs["train_fraction"] = 0.9;  // sums past 1
  CHECK_THROWS_AS(json_io::case_study_config_from_json(bad_fracs), ValidationError);
}

TEST_CASE("synth config round-trips including the trajectory") {
  sensor::SynthConfig config;
  config.duration_s = 42.0;
  config.pressure_noise_pa = 1.25;
  config.trajectory.hovers = {{5.0, 3.0, 1.1}};
  config.trajectory.sinusoids = {{0.5, 0.02, 0.3}};

  const auto back = json_io::synth_config_from_json(json_io::to_json(config));
  CHECK(back.duration_s == 42.0);
  CHECK(back.pressure_noise_pa == 1.25);
  REQUIRE(back.trajectory.hovers.size() == 1);
  CHECK(back.trajectory.hovers[0].height_m == 1.1);
  REQUIRE(back.trajectory.sinusoids.size() == 1);
  CHECK(back.trajectory.sinusoids[0].amplitude_m == 0.5);

  json j = json_io::to_json(config);
  j["pressure_noise"] = 1.0;
  CHECK_THROWS_AS(json_io::synth_config_from_json(j), ValidationError);
}

TEST_CASE("fusion model serialization round-trips both regressors") {
  estimation::FusionModel linear;
  linear.sigma_g2_known = 0.8;
  linear.s_hat = 1.4;
  linear.regressor = estimation::LinearMap{0.86, 0.0};

  const auto linear_back = json_io::fusion_model_from_json(json_io::to_json(linear));
  CHECK(linear_back.sigma_g2_known == 0.8);
  CHECK(linear_back.s_hat == 1.4);
  CHECK(linear_back.predict(2.0) == doctest::Approx(1.72));

  const std::vector<double> inputs{3.0, 1.0, 2.0};
  const std::vector<double> targets{30.0, 10.0, 20.0};
  estimation::FusionModel knn;
  knn.sigma_g2_known = 1.0;
  knn.s_hat = 2.0;
  knn.regressor = estimation::KnnRegressor::fit(inputs, targets, 2);

  const json j = json_io::to_json(knn);
  CHECK(j.at("regressor").at("type") == "knn");
  CHECK(j.at("regressor").at("inputs") == json(inputs));  // original training order

  const auto knn_back = json_io::fusion_model_from_json(j);
  for (double q : {0.0, 1.4, 2.6, 9.0}) {
    CHECK(knn_back.predict(q) == knn.predict(q));
  }

  json bad = j;
  bad["regressor"]["type"] = "forest";
  CHECK_THROWS_AS(json_io::fusion_model_from_json(bad), ValidationError);
}

TEST_CASE("dump_report is deterministic") {
  const json j = json_io::to_json(theory::report({6.25, 1.0, 16.0}));
  CHECK(json_io::dump_report(j) == json_io::dump_report(j));
  CHECK(json_io::dump_report(j).back() == '\n');
}
