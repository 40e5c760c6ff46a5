// sslfusion command-line front end. Every subcommand is deterministic for a
// fixed flag set: seeds default to fixed constants, never the clock.
// Exit codes: 0 success, 1 internal/numerical failure, 2 usage/input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sslfusion/defaults.hpp"
#include "sslfusion/errors.hpp"
#include "sslfusion/harness.hpp"
#include "sslfusion/json_io.hpp"
#include "sslfusion/model.hpp"
#include "sslfusion/report.hpp"
#include "sslfusion/sensor.hpp"
#include "sslfusion/theory.hpp"

namespace {

using namespace sslfusion;

void write_output(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError(out_path + ": cannot open for writing");
  out << payload;
}

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(line, &used);
      if (used != line.size()) throw std::invalid_argument(line);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "not a number: '" + line + "'");
    }
  }
  return values;
}

bool looks_like_sensor_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::string header;
  std::getline(in, header);
  while (!header.empty() && (header.back() == '\n' || header.back() == '\r')) header.pop_back();
  return header == "time_s,truth_m,sonar_m,pressure_pa";
}

struct TheoryArgs {
  double sigma_t2 = 0, sigma_g2 = 0, sigma_f2 = 0;
  std::string format = "json";
  std::string out;
};

struct VerifyArgs {
  double sigma_t2 = 0, sigma_g2 = 0, sigma_f2 = 0;
  std::size_t n = kDefaultVerifySamples;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;
};

struct TableArgs {
  std::size_t n = kDefaultVerifySamples;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;
};

struct SynthArgs {
  std::string config_path;
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  bool seed_set = false;
};

struct CaseStudyArgs {
  std::string log_path;
  std::string config_path;
  std::string primary = "sonar";
  int k = kDefaultNeighbors;
  int runs = kDefaultRuns;
  std::vector<double> splits;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;
  std::string runs_out;
};

struct AnalyzeArgs {
  std::string path;
  std::string column = "truth_m";
  int bins = 0;
  int reps = kDefaultRandomizationReps;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;
  std::string hist_out;
};

int run_theory(const TheoryArgs& args) {
  const ModelParams params{args.sigma_t2, args.sigma_g2, args.sigma_f2};
  const theory::TheoryReport rep = theory::report(params);
  if (args.format == "json") {
    write_output(json_io::dump_report(json_io::to_json(rep)), args.out);
  } else {
    write_output(report::theory_text(rep), args.out);
  }
  return 0;
}

int run_verify(const VerifyArgs& args) {
  const ModelParams params{args.sigma_t2, args.sigma_g2, args.sigma_f2};
  const std::vector<harness::VerificationRow> rows = {
      harness::verify_theory(params, args.n, args.seed)};
  if (args.format == "json") {
    write_output(json_io::dump_report(json_io::verification_report(rows, args.n, args.seed)),
                 args.out);
  } else if (args.format == "csv") {
    write_output(report::verification_csv(rows), args.out);
  } else {
    write_output(report::verification_text(rows), args.out);
  }
  return 0;
}

int run_table(const TableArgs& args) {
  const auto rows = harness::reference_table(args.n, args.seed);
  if (args.format == "json") {
    write_output(json_io::dump_report(json_io::verification_report(rows, args.n, args.seed)),
                 args.out);
  } else if (args.format == "csv") {
    write_output(report::verification_csv(rows), args.out);
  } else {
    write_output(report::verification_text(rows), args.out);
  }
  return 0;
}

int run_synth(const SynthArgs& args) {
  sensor::SynthConfig config;
  if (!args.config_path.empty()) {
    config = json_io::synth_config_from_json(json_io::load_json_file(args.config_path));
  }
  if (args.seed_set) config.seed = args.seed;  // explicit flag wins over the config file
  const sensor::SensorLog log = sensor::synthesize_log(config);
  sensor::save_log(log, args.out);
  std::cout << json_io::dump_report(json_io::to_json(config));
  return 0;
}

int run_case_study(const CaseStudyArgs& args, const CLI::App* sub) {
  harness::CaseStudyConfig config;
  if (!args.config_path.empty()) {
    config = json_io::case_study_config_from_json(json_io::load_json_file(args.config_path));
  }
  // Explicit flags override the config file.
  if (sub->count("--primary") != 0) {
    config.primary = args.primary == "barometer" ? harness::PrimaryCue::kBarometer
                                                 : harness::PrimaryCue::kSonar;
  }
  if (sub->count("--k") != 0) config.k = args.k;
  if (sub->count("--runs") != 0) config.runs = args.runs;
  if (sub->count("--seed") != 0) config.seed = args.seed;
  if (sub->count("--splits") != 0) {
    if (args.splits.size() != 3) {
      throw ValidationError("--splits expects three comma-separated fractions");
    }
    config.train_fraction = args.splits[0];
    config.validation_fraction = args.splits[1];
    config.test_fraction = args.splits[2];
  }

  const sensor::SensorLog log = sensor::load_log(args.log_path);
  const harness::RunReport rep = harness::run_case_study(log, config);
  if (args.format == "json") {
    write_output(json_io::dump_report(json_io::to_json(rep)), args.out);
  } else {
    write_output(report::case_study_text(rep), args.out);
  }
  if (!args.runs_out.empty()) {
    write_output(report::case_study_runs_csv(rep), args.runs_out);
  }
  return 0;
}

int run_analyze(const AnalyzeArgs& args) {
  std::vector<double> values;
  if (looks_like_sensor_log(args.path)) {
    const sensor::SensorLog log = sensor::load_log(args.path);
    if (args.column == "truth_m") {
      values = log.truths();
    } else if (args.column == "sonar_m") {
      values = log.sonars();
    } else if (args.column == "pressure_pa") {
      values = log.pressures();
    } else if (args.column == "sonar_error") {
      values.reserve(log.size());
      for (const auto& r : log.records) values.push_back(r.sonar_m - r.truth_m);
    } else {
      throw ValidationError("analyze: unknown column '" + args.column + "'");
    }
  } else {
    values = read_values_file(args.path);
  }

  const harness::DistStats stats =
      harness::analyze_distribution(values, args.bins, args.reps, args.seed);
  if (args.format == "json") {
    write_output(json_io::dump_report(json_io::to_json(stats)), args.out);
  } else {
    write_output(report::dist_stats_text(stats), args.out);
  }
  if (!args.hist_out.empty()) {
    write_output(report::histogram_csv(stats), args.hist_out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sslfusion: self-supervised sensor fusion for scalar Gaussian cues.\n"
      "Closed-form expected errors and favorability thresholds, robot-side\n"
      "estimators, a synthetic flight-log pipeline, and Monte Carlo suites."};
  app.require_subcommand(1);

  TheoryArgs theory_args;
  auto* theory_cmd =
      app.add_subcommand("theory", "Closed-form report for one parameter set");
  theory_cmd->add_option("sigma_t2", theory_args.sigma_t2, "Prior variance of the target")
      ->required();
  theory_cmd->add_option("sigma_g2", theory_args.sigma_g2, "Primary-cue noise variance")
      ->required();
  theory_cmd->add_option("sigma_f2", theory_args.sigma_f2, "Secondary-cue noise variance")
      ->required();
  theory_cmd->add_option("--format", theory_args.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  theory_cmd->add_option("--out", theory_args.out, "Write the report to this path");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "Monte Carlo verification of the closed forms for one parameter set "
      "(variance proxy from the window [-0.05, 0.05] on the primary cue)");
  verify_cmd->add_option("--sigma-t2", verify_args.sigma_t2, "Prior variance of the target")
      ->required();
  verify_cmd->add_option("--sigma-g2", verify_args.sigma_g2, "Primary-cue noise variance")
      ->required();
  verify_cmd->add_option("--sigma-f2", verify_args.sigma_f2, "Secondary-cue noise variance")
      ->required();
  verify_cmd->add_option("--n", verify_args.n, "Samples to draw")->capture_default_str();
  verify_cmd->add_option("--seed", verify_args.seed, "RNG seed")->capture_default_str();
  verify_cmd->add_option("--format", verify_args.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  verify_cmd->add_option("--out", verify_args.out, "Write the report to this path");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand(
      "table1",
      "Monte Carlo verification over the four built-in reference parameter sets "
      "(variance proxy from the window [-0.05, 0.05] on the primary cue)");
  table_cmd->add_option("--n", table_args.n, "Samples per row")->capture_default_str();
  table_cmd->add_option("--seed", table_args.seed, "RNG seed")->capture_default_str();
  table_cmd->add_option("--format", table_args.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  table_cmd->add_option("--out", table_args.out, "Write the report to this path");

  SynthArgs synth_args;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic flight log (CSV) from a config");
  synth_cmd->add_option("--config", synth_args.config_path, "Generator config (JSON)")
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("--out", synth_args.out, "Log CSV output path")->required();
  synth_cmd->add_option("--seed", synth_args.seed, "RNG seed (overrides the config file)");

  CaseStudyArgs cs_args;
  auto* cs_cmd = app.add_subcommand(
      "casestudy",
      "Shuffled-split fusion experiment on a sensor log (defaults: k=3, 100 runs, "
      "0.80/0.10/0.10 splits)");
  cs_cmd->add_option("log", cs_args.log_path, "Sensor log CSV")->required();
  cs_cmd->add_option("--config", cs_args.config_path, "Case-study config (JSON); flags win")
      ->check(CLI::ExistingFile);
  cs_cmd->add_option("--primary", cs_args.primary, "Primary cue")
      ->check(CLI::IsMember({"sonar", "barometer"}))
      ->capture_default_str();
  cs_cmd->add_option("--k", cs_args.k, "Neighbor count for the secondary-cue regressor")
      ->capture_default_str();
  cs_cmd->add_option("--runs", cs_args.runs, "Number of repeated experiments")
      ->capture_default_str();
  cs_cmd->add_option("--splits", cs_args.splits,
                     "Train,validation,test fractions (e.g. 0.8,0.1,0.1)")
      ->delimiter(',');
  cs_cmd->add_option("--seed", cs_args.seed, "RNG seed")->capture_default_str();
  cs_cmd->add_option("--format", cs_args.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cs_cmd->add_option("--out", cs_args.out, "Write the report to this path");
  cs_cmd->add_option("--runs-out", cs_args.runs_out, "Write per-run MAEs as CSV to this path");

  AnalyzeArgs an_args;
  auto* an_cmd = app.add_subcommand(
      "analyze",
      "Distribution statistics versus a moment-matched normal (chi-square over "
      "equal-probability bins plus a randomization p-value)");
  an_cmd->add_option("input", an_args.path,
                     "Sensor log CSV, or a text file with one value per line")
      ->required()
      ->check(CLI::ExistingFile);
  an_cmd->add_option("--column", an_args.column,
                     "Column when the input is a sensor log: truth_m, sonar_m, pressure_pa, "
                     "or sonar_error (sonar_m - truth_m)")
      ->capture_default_str();
  an_cmd->add_option("--bins", an_args.bins, "Bin count; 0 picks max(5, n/50) capped at 50")
      ->capture_default_str();
  an_cmd->add_option("--reps", an_args.reps, "Randomization repetitions")
      ->capture_default_str();
  an_cmd->add_option("--seed", an_args.seed, "RNG seed")->capture_default_str();
  an_cmd->add_option("--format", an_args.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  an_cmd->add_option("--out", an_args.out, "Write the report to this path");
  an_cmd->add_option("--hist-out", an_args.hist_out, "Write the histogram as CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (theory_cmd->parsed()) return run_theory(theory_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (table_cmd->parsed()) return run_table(table_args);
    if (synth_cmd->parsed()) {
      synth_args.seed_set = synth_cmd->count("--seed") != 0;
      return run_synth(synth_args);
    }
    if (cs_cmd->parsed()) return run_case_study(cs_args, cs_cmd);
    if (an_cmd->parsed()) return run_analyze(an_args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
