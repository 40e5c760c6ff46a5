#pragma once

#include <string>
#include <vector>

#include "sslfusion/harness.hpp"
#include "sslfusion/theory.hpp"

// Human-readable (aligned-column) and CSV renderings of the reports.

namespace sslfusion::report {

std::string theory_text(const theory::TheoryReport& report);

std::string verification_text(const std::vector<harness::VerificationRow>& rows);
std::string verification_csv(const std::vector<harness::VerificationRow>& rows);

std::string case_study_text(const harness::RunReport& report);
std::string case_study_runs_csv(const harness::RunReport& report);

std::string dist_stats_text(const harness::DistStats& stats);
std::string histogram_csv(const harness::DistStats& stats);

}  // namespace sslfusion::report
