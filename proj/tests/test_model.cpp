#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sslfusion/errors.hpp"
#include "sslfusion/model.hpp"
#include "sslfusion/stats.hpp"

using namespace sslfusion;

namespace {

// Temp file that cleans up after itself.
struct TempPath {
  std::filesystem::path path;
  explicit TempPath(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    std::filesystem::remove(dataset_sidecar_path(path), ec);
  }
};

}  // namespace

TEST_CASE("params are validated") {
  CHECK_THROWS_AS(draw({0.0, 1.0, 1.0}, 10, 1), ValidationError);
  CHECK_THROWS_AS(draw({1.0, -1.0, 1.0}, 10, 1), ValidationError);
  CHECK_THROWS_AS(draw({1.0, 1.0, std::nan("")}, 10, 1), ValidationError);
  CHECK_THROWS_AS(draw({1.0, 1.0, 1.0}, 0, 1), ValidationError);
  CHECK(ModelParams{1.0, 1.0, 1.0}.is_valid());
  CHECK_FALSE(ModelParams{1.0, 1.0, 0.0}.is_valid());
}

TEST_CASE("sample variance of the target matches the prior") {
  const ModelParams params{6.25, 1.0, 1.0};
  const Dataset ds = draw(params, 10000, 11);
  const auto t = ds.targets();
  // Brute-force sample variance against the configured prior; the sampling
  // error of a variance over 1e4 draws is ~1.4% (one sigma).
  CHECK(stats::sample_variance(t) == doctest::Approx(6.25).epsilon(0.05));
}

TEST_CASE("single-sample draw is deterministic") {
  const ModelParams params{2.0, 0.5, 3.0};
  const Dataset a = draw(params, 1, 99);
  const Dataset b = draw(params, 1, 99);
  CHECK(a.samples[0].t == b.samples[0].t);
  CHECK(a.samples[0].x_g == b.samples[0].x_g);
  CHECK(a.samples[0].x_f == b.samples[0].x_f);
}

TEST_CASE("regeneration is bit-exact and streams are independent") {
  const ModelParams params{1.0, 2.0, 0.25};
  const Dataset a = draw(params, 500, 7, 3);
  const Dataset b = draw(params, 500, 7, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.samples[i].t == b.samples[i].t);
    CHECK(a.samples[i].x_g == b.samples[i].x_g);
    CHECK(a.samples[i].x_f == b.samples[i].x_f);
  }
  const Dataset c = draw(params, 500, 7, 4);
  CHECK(a.samples[0].t != c.samples[0].t);
}

TEST_CASE("cue covariance equals the prior variance") {
  // cov(x_g, x_f) reduces to var(t) because the cue noises are independent
  // given t.
  const ModelParams params{0.25, 1.0, 1.0};
  const Dataset ds = draw(params, 100000, 13);
  const double cov = stats::sample_covariance(ds.primary_cues(), ds.secondary_cues());
  CHECK(std::abs(cov - 0.25) < 0.02);
}

TEST_CASE("marginal variances and conditional independence") {
  const ModelParams params{4.0, 1.5, 0.5};
  const std::size_t n = 100000;
  const Dataset ds = draw(params, n, 23);
  const auto t = ds.targets();
  const auto x_g = ds.primary_cues();
  const auto x_f = ds.secondary_cues();

  const double tol = 4.0 * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(stats::sample_variance(x_g) ==
        doctest::Approx(params.sigma_g2 + params.sigma_t2).epsilon(tol));
  CHECK(stats::sample_variance(x_f) ==
        doctest::Approx(params.sigma_f2 + params.sigma_t2).epsilon(tol));

  const double r = stats::partial_correlation(x_g, x_f, t);
  CHECK(std::abs(r) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("csv round-trip is bit-exact with sidecar metadata") {
  const ModelParams params{6.25, 1.0, 16.0};
  const Dataset ds = draw(params, 257, 77, 5);
  TempPath tmp("sslfusion_model_roundtrip.csv");

  write_dataset_csv(ds, tmp.path);
  const Dataset back = read_dataset_csv(tmp.path);

  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back.samples[i].t == ds.samples[i].t);
    CHECK(back.samples[i].x_g == ds.samples[i].x_g);
    CHECK(back.samples[i].x_f == ds.samples[i].x_f);
  }
  CHECK(back.seed == ds.seed);
  CHECK(back.stream == ds.stream);
  CHECK(back.params.sigma_t2 == ds.params.sigma_t2);
  CHECK(back.params.sigma_g2 == ds.params.sigma_g2);
  CHECK(back.params.sigma_f2 == ds.params.sigma_f2);
}

TEST_CASE("malformed csv rows are rejected with context") {
  TempPath tmp("sslfusion_model_bad.csv");
  {
    std::FILE* f = std::fopen(tmp.path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("t,x_g,x_f\n1.0,2.0,3.0\n1.0,oops,3.0\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_WITH_AS(read_dataset_csv(tmp.path),
                       doctest::Contains(":3:"), ParseError);
}

TEST_CASE("missing header is rejected") {
  TempPath tmp("sslfusion_model_noheader.csv");
  {
    std::FILE* f = std::fopen(tmp.path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("1.0,2.0,3.0\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_dataset_csv(tmp.path), ParseError);
}
