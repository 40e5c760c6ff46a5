#include "sslfusion/report.hpp"

#include <cstdio>

#include "csv_util.hpp"

namespace sslfusion::report {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string threshold_str(const std::optional<double>& v) {
  return v ? fmt("%.6g", *v) : std::string("unbounded");
}

}  // namespace

std::string theory_text(const theory::TheoryReport& r) {
  std::string out;
  out += "params              sigma_t2=" + fmt("%.6g", r.params.sigma_t2) +
         "  sigma_g2=" + fmt("%.6g", r.params.sigma_g2) +
         "  sigma_f2=" + fmt("%.6g", r.params.sigma_f2) + "\n";
  out += "slope a*            " + fmt("%.6f", r.a_star) + "\n";
  out += "cond. variance s*   " + fmt("%.6f", r.s_star) + "\n";
  out += "weights             alpha=" + fmt("%.6f", r.alpha) + "  beta=" + fmt("%.6f", r.beta) +
         "\n";
  out += "e_primary           " + fmt("%.6f", r.e_primary) + "\n";
  out += "e_fused             " + fmt("%.6f", r.e_fused) + "\n";
  out += "favorable           " + std::string(r.favorable ? "yes" : "no") + " (" +
         theory::condition_name(r.condition) + ")\n";
  out += "sigma_f2 threshold  " + threshold_str(r.sigma_f2_threshold) + "\n";
  out += "sigma_yf2 threshold " + threshold_str(r.sigma_yf2_threshold) + "\n";
  return out;
}

std::string verification_text(const std::vector<harness::VerificationRow>& rows) {
  std::string out =
      "sigma_t2 sigma_g2 sigma_f2        n   primary (theory)     fused (theory)\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%8.4g %8.4g %8.4g %8zu   %7.4f (%6.4f)   %7.4f (%6.4f)\n",
                  r.params.sigma_t2, r.params.sigma_g2, r.params.sigma_f2, r.n,
                  r.mse_primary_empirical, r.mse_primary_theory, r.mse_fused_empirical,
                  r.mse_fused_theory);
    out += line;
  }
  return out;
}

std::string verification_csv(const std::vector<harness::VerificationRow>& rows) {
  std::string out =
      "sigma_t2,sigma_g2,sigma_f2,n,mse_primary_empirical,mse_primary_theory,"
      "mse_fused_empirical,mse_fused_theory,se_primary,se_fused,a_hat,s_hat\n";
  for (const auto& r : rows) {
    out += csv::format_double(r.params.sigma_t2) + ',' + csv::format_double(r.params.sigma_g2) +
           ',' + csv::format_double(r.params.sigma_f2) + ',' + std::to_string(r.n) + ',' +
           csv::format_double(r.mse_primary_empirical) + ',' +
           csv::format_double(r.mse_primary_theory) + ',' +
           csv::format_double(r.mse_fused_empirical) + ',' +
           csv::format_double(r.mse_fused_theory) + ',' + csv::format_double(r.se_primary) +
           ',' + csv::format_double(r.se_fused) + ',' + csv::format_double(r.a_hat) + ',' +
           csv::format_double(r.s_hat) + '\n';
  }
  return out;
}

std::string case_study_text(const harness::RunReport& r) {
  std::string out;
  out += "primary cue         " + std::string(harness::primary_cue_name(r.config.primary)) +
         "\n";
  out += "runs                " + std::to_string(r.config.runs) + "  (k=" +
         std::to_string(r.config.k) + ", splits " + fmt("%.2f", r.config.train_fraction) + "/" +
         fmt("%.2f", r.config.validation_fraction) + "/" + fmt("%.2f", r.config.test_fraction) +
         ", seed " + std::to_string(r.config.seed) + ")\n";
  out += "mean MAE primary    " + fmt("%.4f", r.mean_mae_primary) + " m\n";
  out += "mean MAE secondary  " + fmt("%.4f", r.mean_mae_secondary) + " m\n";
  out += "mean MAE fused      " + fmt("%.4f", r.mean_mae_fused) + " m\n";
  out += "successful fusion   " + fmt("%.1f", 100.0 * r.success_rate) + "%\n";
  return out;
}

std::string case_study_runs_csv(const harness::RunReport& r) {
  std::string out = "run,mae_primary,mae_secondary,mae_fused\n";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    out += std::to_string(i) + ',' + csv::format_double(r.runs[i].mae_primary) + ',' +
           csv::format_double(r.runs[i].mae_secondary) + ',' +
           csv::format_double(r.runs[i].mae_fused) + '\n';
  }
  return out;
}

std::string dist_stats_text(const harness::DistStats& s) {
  std::string out;
  out += "n                   " + std::to_string(s.n) + "\n";
  out += "mean                " + fmt("%.6g", s.mean) + "\n";
  out += "stddev              " + fmt("%.6g", s.stddev) + "\n";
  out += "bins                " + std::to_string(s.bins) + "\n";
  out += "chi-square          " + fmt("%.6g", s.chi_square) + "\n";
  out += "p-value             " + fmt("%.6g", s.p_value) + "  (" +
         std::to_string(s.randomization_reps) + " randomizations)\n";
  return out;
}

std::string histogram_csv(const harness::DistStats& s) {
  std::string out = "bin,lower,upper,count\n";
  for (std::size_t i = 0; i < s.bin_counts.size(); ++i) {
    const std::string lower = i == 0 ? "-inf" : csv::format_double(s.bin_edges[i - 1]);
    const std::string upper =
        i + 1 == s.bin_counts.size() ? "inf" : csv::format_double(s.bin_edges[i]);
    out += std::to_string(i) + ',' + lower + ',' + upper + ',' + std::to_string(s.bin_counts[i]) +
           '\n';
  }
  return out;
}

}  // namespace sslfusion::report
