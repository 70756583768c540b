#include "compclust/analysis.hpp"

#include <algorithm>

#include "compclust/errors.hpp"

namespace compclust {

std::optional<std::size_t> AnalysisSnapshot::clustered_index(const std::string& agent) const {
    const std::string key = fold_name(agent);
    for (std::size_t i = 0; i < distances.labels().size(); ++i) {
        if (fold_name(distances.labels()[i]) == key) return i;
    }
    return std::nullopt;
}

std::optional<int> AnalysisSnapshot::cluster_of(const std::string& agent) const {
    auto idx = clustered_index(agent);
    if (!idx) return std::nullopt;
    return assignment.labels[*idx];
}

const ProbabilityVector& AnalysisSnapshot::vector_of(const std::string& agent) const {
    return vectors[roster.index_of(agent)];
}

AnalysisSnapshot analyze_compositions(std::string label,
                                      const std::vector<TeamComposition>& comps,
                                      const PipelineOptions& options) {
    AnalysisSnapshot snap;
    snap.label = std::move(label);
    snap.composition_count = static_cast<std::int64_t>(comps.size());
    snap.roster = build_roster(comps);

    const CooccurrenceMatrix matrix = build_cooccurrence(comps, snap.roster);
    snap.vectors = normalize(matrix);
    for (const auto& v : snap.vectors) {
        if (!v.defined()) snap.excluded_agents.push_back(v.agent);
    }

    snap.distances = distance_matrix(snap.vectors, options.sqrt_distance);
    snap.dendrogram = upgma(snap.distances);

    const int m = static_cast<int>(snap.distances.size());
    if (m >= 3) {
        snap.sweep = sweep_k(snap.distances, snap.dendrogram);
    }
    if (options.k_override) {
        const int k = *options.k_override;
        if (k < 2 || k > m - 1) {
            throw ValidationError("k override must be in [2, " + std::to_string(m - 1) +
                                  "], got " + std::to_string(k));
        }
        snap.chosen_k = k;
    } else if (m >= 3) {
        snap.chosen_k = snap.sweep.best_k;
    } else {
        snap.chosen_k = 1;  // two agents: a single pair cluster
    }
    snap.assignment = cut(snap.dendrogram, snap.chosen_k);
    return snap;
}

}  // namespace compclust
