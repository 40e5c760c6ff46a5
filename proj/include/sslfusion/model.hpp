#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sslfusion {

// Ground-truth variances of the scalar fusion model: a latent target
// t ~ N(0, sigma_t2) observed through a trusted primary cue
// x_g ~ N(t, sigma_g2) and an uncharacterized secondary cue
// x_f ~ N(t, sigma_f2).
struct ModelParams {
  double sigma_t2 = 1.0;
  double sigma_g2 = 1.0;
  double sigma_f2 = 1.0;

  // Throws ValidationError unless all three variances are finite and > 0.
  void validate() const;
  bool is_valid() const noexcept;
};

struct Sample {
  double t = 0.0;
  double x_g = 0.0;
  double x_f = 0.0;
};

// An i.i.d. draw from the model. Regenerating with the same params, n,
// seed, and stream reproduces the samples bit-exactly.
struct Dataset {
  ModelParams params;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<Sample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  std::vector<double> targets() const;         // t column
  std::vector<double> primary_cues() const;    // x_g column
  std::vector<double> secondary_cues() const;  // x_f column
};

// Hierarchical sampling: per sample, t first, then x_g and x_f
// conditionally independent given t, consuming three normal variates in
// that fixed order from Pcg32(seed, stream).
Dataset draw(const ModelParams& params, std::size_t n, std::uint64_t seed,
             std::uint64_t stream = 0);

// CSV with header "t,x_g,x_f" plus a sidecar JSON (same path with a .json
// extension) holding {params, seed, stream, n}. Values are written in
// shortest round-trip form, so write -> read is bit-exact.
void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& csv_path);
Dataset read_dataset_csv(const std::filesystem::path& csv_path);

std::filesystem::path dataset_sidecar_path(const std::filesystem::path& csv_path);

}  // namespace sslfusion
