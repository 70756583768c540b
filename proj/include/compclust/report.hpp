#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "compclust/analysis.hpp"
#include "compclust/ingest.hpp"
#include "compclust/patch_impact.hpp"

namespace compclust {

inline constexpr const char* kToolName = "compclust";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// What went into a run, embedded in every report so pre/post comparisons are
// auditable.
struct RunFingerprint {
    std::vector<std::string> input_paths;
    std::vector<std::string> input_hashes;  // fnv1a64 of file bytes, hex
    std::string format;                     // "wide" | "long"
    std::optional<std::string> map_filter;
    std::optional<int> k_override;
    bool sqrt_distance = false;
    std::string strictness;  // "strict" | "lenient"
};

nlohmann::ordered_json fingerprint_json(const RunFingerprint& fp);

nlohmann::ordered_json analysis_report_json(const AnalysisSnapshot& snap,
                                            const RunFingerprint& fp, const IngestStats& stats);

nlohmann::ordered_json patch_report_json(const PatchImpactReport& report,
                                         const RunFingerprint& pre_fp,
                                         const RunFingerprint& post_fp);

// Plain-text/markdown rendering of the comparison for humans.
std::string patch_report_markdown(const PatchImpactReport& report);

}  // namespace compclust
