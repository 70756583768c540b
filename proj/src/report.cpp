#include "compclust/report.hpp"

#include <sstream>

#include "compclust/exports.hpp"

namespace compclust {

nlohmann::ordered_json fingerprint_json(const RunFingerprint& fp) {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["input_paths"] = fp.input_paths;
    j["input_fnv1a64"] = fp.input_hashes;
    j["format"] = fp.format;
    j["map_filter"] = fp.map_filter ? nlohmann::ordered_json(*fp.map_filter) : nullptr;
    j["k_override"] = fp.k_override ? nlohmann::ordered_json(*fp.k_override) : nullptr;
    j["sqrt_distance"] = fp.sqrt_distance;
    j["strictness"] = fp.strictness;
    return j;
}

namespace {

nlohmann::ordered_json stats_json(const IngestStats& stats) {
    nlohmann::ordered_json j;
    j["rows_read"] = stats.rows_read;
    j["records_parsed"] = stats.records_parsed;
    j["groups_skipped"] = stats.groups_skipped;
    j["skip_reasons"] = stats.skip_reasons;
    j["records_dropped_by_filter"] = stats.records_dropped_by_filter;
    j["blank_map_records_dropped"] = stats.blank_map_records_dropped;
    j["blank_map_records_retained"] = stats.blank_map_records_retained;
    j["compositions"] = stats.compositions;
    return j;
}

nlohmann::ordered_json clusters_json(const AnalysisSnapshot& snap) {
    std::vector<std::vector<std::string>> clusters(static_cast<std::size_t>(snap.chosen_k));
    for (std::size_t i = 0; i < snap.assignment.labels.size(); ++i) {
        clusters[static_cast<std::size_t>(snap.assignment.labels[i])].push_back(
            snap.assignment.agents[i]);
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        out.push_back({{"id", c}, {"agents", clusters[c]}});
    }
    return out;
}

nlohmann::ordered_json sweep_json(const SilhouetteSweep& sweep) {
    nlohmann::ordered_json j;
    auto& scores = j["scores"] = nlohmann::ordered_json::array();
    for (const auto& [k, score] : sweep.scores) {
        scores.push_back({{"k", k}, {"mean_silhouette", score}});
    }
    j["best_k"] = sweep.best_k;
    j["best_score"] = sweep.best_score;
    return j;
}

}  // namespace

nlohmann::ordered_json analysis_report_json(const AnalysisSnapshot& snap,
                                            const RunFingerprint& fp, const IngestStats& stats) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "analysis";
    j["label"] = snap.label;
    j["fingerprint"] = fingerprint_json(fp);
    j["data_quality"] = stats_json(stats);
    j["composition_count"] = snap.composition_count;
    j["roster"] = snap.roster.names();
    j["excluded_agents"] = snap.excluded_agents;
    j["clustered_agents"] = snap.distances.labels();
    j["log_base"] = DistanceMatrix::log_base;
    j["sqrt_distance"] = snap.distances.sqrt_applied();
    if (!snap.sweep.scores.empty()) {
        j["silhouette_sweep"] = sweep_json(snap.sweep);
    } else {
        j["silhouette_sweep"] = nullptr;  // fewer than 3 clustered agents
    }
    j["chosen_k"] = snap.chosen_k;
    j["clusters"] = clusters_json(snap);
    j["dendrogram"] = dendrogram_json(snap.dendrogram);
    return j;
}

namespace {

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json patch_report_json(const PatchImpactReport& report,
                                         const RunFingerprint& pre_fp,
                                         const RunFingerprint& post_fp) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "patch_impact";
    j["pre"] = {{"label", report.pre_label}, {"k", report.pre_k},
                {"fingerprint", fingerprint_json(pre_fp)}};
    j["post"] = {{"label", report.post_label}, {"k", report.post_k},
                 {"fingerprint", fingerprint_json(post_fp)}};
    if (report.pre_k != report.post_k) {
        j["note"] = "pre and post cluster counts differ; clusters matched by Jaccard overlap";
    }

    auto& matching = j["cluster_matching"] = nlohmann::ordered_json::array();
    for (const auto& match : report.matching.matches) {
        matching.push_back({{"pre_id", match.pre_id},
                            {"post_id", match.post_id},
                            {"jaccard", match.jaccard},
                            {"centroid_jsd", match.centroid_jsd}});
    }
    j["unmatched_pre_clusters"] = report.matching.unmatched_pre;
    j["unmatched_post_clusters"] = report.matching.unmatched_post;

    auto& per_agent = j["per_agent"] = nlohmann::ordered_json::array();
    for (const auto& impact : report.per_agent) {
        per_agent.push_back({{"agent", impact.agent},
                             {"pre_cluster", impact.pre_cluster},
                             {"post_cluster", impact.post_cluster},
                             {"matched", impact.matched},
                             {"delta_centroid", impact.delta_centroid}});
    }

    auto& per_cluster = j["per_cluster"] = nlohmann::ordered_json::array();
    for (const auto& impact : report.per_cluster) {
        nlohmann::ordered_json entry = {{"pre_id", impact.pre_id},
                                        {"post_id", impact.post_id},
                                        {"jaccard", impact.jaccard},
                                        {"pre_mean_inter", opt_json(impact.pre_mean_inter)},
                                        {"post_mean_inter", opt_json(impact.post_mean_inter)},
                                        {"delta_inter", opt_json(impact.delta_inter)}};
        if (!impact.null_reason.empty()) entry["null_reason"] = impact.null_reason;
        per_cluster.push_back(std::move(entry));
    }

    j["membership_shifts"] = report.shifts.shifted;
    j["agents_added"] = report.shifts.added;
    j["agents_removed"] = report.shifts.removed;
    return j;
}

std::string patch_report_markdown(const PatchImpactReport& report) {
    std::ostringstream os;
    os << "# Patch impact: " << report.pre_label << " -> " << report.post_label << "\n\n";
    os << "Pre k = " << report.pre_k << ", post k = " << report.post_k << "\n\n";

    os << "## Cluster matching\n\n";
    os << "| pre | post | jaccard | centroid JSD |\n|---|---|---|---|\n";
    for (const auto& match : report.matching.matches) {
        os << "| " << match.pre_id << " | " << match.post_id << " | " << fmt_g17(match.jaccard)
           << " | " << fmt_g17(match.centroid_jsd) << " |\n";
    }
    if (!report.matching.unmatched_pre.empty() || !report.matching.unmatched_post.empty()) {
        os << "\nUnmatched pre clusters:";
        for (int id : report.matching.unmatched_pre) os << ' ' << id;
        os << "\nUnmatched post clusters:";
        for (int id : report.matching.unmatched_post) os << ' ' << id;
        os << "\n";
    }

    os << "\n## Per-agent centroid-distance change\n\n";
    os << "| agent | pre cluster | post cluster | matched | delta_centroid |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& impact : report.per_agent) {
        os << "| " << impact.agent << " | " << impact.pre_cluster << " | " << impact.post_cluster
           << " | " << (impact.matched ? "yes" : "no") << " | " << fmt_g17(impact.delta_centroid)
           << " |\n";
    }

    os << "\n## Per-cluster mean inter-agent distance change\n\n";
    os << "| pre | post | pre mean | post mean | delta_inter |\n|---|---|---|---|---|\n";
    for (const auto& impact : report.per_cluster) {
        auto cell = [](const std::optional<double>& v) {
            return v ? fmt_g17(*v) : std::string("null");
        };
        os << "| " << impact.pre_id << " | " << impact.post_id << " | "
           << cell(impact.pre_mean_inter) << " | " << cell(impact.post_mean_inter) << " | "
           << cell(impact.delta_inter);
        if (!impact.null_reason.empty()) os << " (" << impact.null_reason << ")";
        os << " |\n";
    }

    os << "\n## Membership shifts\n\n";
    if (report.shifts.shifted.empty()) {
        os << "none\n";
    } else {
        for (const auto& agent : report.shifts.shifted) os << "- " << agent << "\n";
    }
    if (!report.shifts.added.empty()) {
        os << "\nAgents added:";
        for (const auto& agent : report.shifts.added) os << ' ' << agent;
        os << "\n";
    }
    if (!report.shifts.removed.empty()) {
        os << "\nAgents removed:";
        for (const auto& agent : report.shifts.removed) os << ' ' << agent;
        os << "\n";
    }
    return os.str();
}

}  // namespace compclust
