#pragma once

#include <string>

#include "json.hpp"

#include "sslfusion/estimation.hpp"
#include "sslfusion/harness.hpp"
#include "sslfusion/model.hpp"
#include "sslfusion/sensor.hpp"
#include "sslfusion/theory.hpp"

// JSON encodings of reports and configs. Every report carries a versioned
// "schema" tag; configs reject unknown keys so typos fail loudly instead
// of silently keeping a default.

namespace sslfusion::json_io {

inline constexpr char kTheorySchema[] = "sslfusion.theory/1";
inline constexpr char kVerificationSchema[] = "sslfusion.verification/1";
inline constexpr char kCaseStudySchema[] = "sslfusion.casestudy/1";
inline constexpr char kDistStatsSchema[] = "sslfusion.diststats/1";
inline constexpr char kSynthConfigSchema[] = "sslfusion.synthconfig/1";
inline constexpr char kFusionModelSchema[] = "sslfusion.fusion_model/1";

nlohmann::json to_json(const ModelParams& params);
ModelParams model_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const theory::TheoryReport& report);

nlohmann::json to_json(const harness::VerificationRow& row);
nlohmann::json verification_report(const std::vector<harness::VerificationRow>& rows,
                                   std::size_t n, std::uint64_t seed);

nlohmann::json to_json(const harness::CaseStudyConfig& config);
harness::CaseStudyConfig case_study_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const harness::RunReport& report);

nlohmann::json to_json(const harness::DistStats& stats);

nlohmann::json to_json(const sensor::SynthConfig& config);
sensor::SynthConfig synth_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const estimation::FusionModel& model);
estimation::FusionModel fusion_model_from_json(const nlohmann::json& j);

// Serialized with sorted keys, two-space indent, and a trailing newline;
// identical inputs give identical bytes.
std::string dump_report(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace sslfusion::json_io
