#include "sslfusion/model.hpp"

#include <cmath>
#include <string>

#include "json.hpp"

#include "sslfusion/errors.hpp"
#include "sslfusion/rng.hpp"
#include "csv_util.hpp"

namespace sslfusion {

void ModelParams::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma_t2) || !positive(sigma_g2) || !positive(sigma_f2)) {
    throw ValidationError(
        "ModelParams: all variances must be finite and strictly positive (got sigma_t2=" +
        std::to_string(sigma_t2) + ", sigma_g2=" + std::to_string(sigma_g2) +
        ", sigma_f2=" + std::to_string(sigma_f2) + ")");
  }
}

bool ModelParams::is_valid() const noexcept {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  return positive(sigma_t2) && positive(sigma_g2) && positive(sigma_f2);
}

std::vector<double> Dataset::targets() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.t);
  return out;
}

std::vector<double> Dataset::primary_cues() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.x_g);
  return out;
}

std::vector<double> Dataset::secondary_cues() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.x_f);
  return out;
}

Dataset draw(const ModelParams& params, std::size_t n, std::uint64_t seed,
             std::uint64_t stream) {
  params.validate();
  if (n < 1) throw ValidationError("draw: n must be >= 1");
  const double sd_t = std::sqrt(params.sigma_t2);
  const double sd_g = std::sqrt(params.sigma_g2);
  const double sd_f = std::sqrt(params.sigma_f2);

  rng::Pcg32 gen(seed, stream);
  Dataset ds;
  ds.params = params;
  ds.seed = seed;
  ds.stream = stream;
  ds.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sd_t * gen.next_normal();
    const double x_g = t + sd_g * gen.next_normal();
    const double x_f = t + sd_f * gen.next_normal();
    ds.samples.push_back({t, x_g, x_f});
  }
  return ds;
}

std::filesystem::path dataset_sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& csv_path) {
  auto out = csv::open_output(csv_path.string());
  out << "t,x_g,x_f\n";
  for (const Sample& s : dataset.samples) {
    out << csv::format_double(s.t) << ',' << csv::format_double(s.x_g) << ','
        << csv::format_double(s.x_f) << '\n';
  }

  nlohmann::json meta{{"schema", "sslfusion.dataset/1"},
                      {"params",
                       {{"sigma_t2", dataset.params.sigma_t2},
                        {"sigma_g2", dataset.params.sigma_g2},
                        {"sigma_f2", dataset.params.sigma_f2}}},
                      {"seed", dataset.seed},
                      {"stream", dataset.stream},
                      {"n", dataset.samples.size()}};
  auto meta_out = csv::open_output(dataset_sidecar_path(csv_path).string());
  meta_out << meta.dump(2) << '\n';
}

Dataset read_dataset_csv(const std::filesystem::path& csv_path) {
  const std::string file = csv_path.string();
  auto in = csv::open_input(file);

  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || csv::chomp(line) != "t,x_g,x_f") {
    throw ParseError(file, lineno, "expected header 't,x_g,x_f'");
  }

  Dataset ds;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = csv::chomp(line);
    if (row.empty()) continue;
    const auto fields = csv::split_fields(row);
    if (fields.size() != 3) throw ParseError(file, lineno, "expected 3 fields");
    Sample s;
    s.t = csv::parse_double(fields[0], file, lineno);
    s.x_g = csv::parse_double(fields[1], file, lineno);
    s.x_f = csv::parse_double(fields[2], file, lineno);
    if (!std::isfinite(s.t) || !std::isfinite(s.x_g) || !std::isfinite(s.x_f)) {
      throw ParseError(file, lineno, "non-finite sample");
    }
    ds.samples.push_back(s);
  }

  const auto sidecar = dataset_sidecar_path(csv_path);
  auto meta_in = csv::open_input(sidecar.string());
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar.string() + ": invalid JSON: " + e.what());
  }
  try {
    ds.params.sigma_t2 = meta.at("params").at("sigma_t2").get<double>();
    ds.params.sigma_g2 = meta.at("params").at("sigma_g2").get<double>();
    ds.params.sigma_f2 = meta.at("params").at("sigma_f2").get<double>();
    ds.seed = meta.at("seed").get<std::uint64_t>();
    ds.stream = meta.value("stream", std::uint64_t{0});
    if (meta.contains("n") && meta.at("n").get<std::size_t>() != ds.samples.size()) {
      throw ParseError(sidecar.string() + ": sample count does not match CSV");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar.string() + ": " + e.what());
  }
  ds.params.validate();
  return ds;
}

}  // namespace sslfusion
