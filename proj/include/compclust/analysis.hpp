#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compclust/cooccur.hpp"
#include "compclust/diagnostics.hpp"
#include "compclust/divergence.hpp"
#include "compclust/hac.hpp"
#include "compclust/ingest.hpp"

namespace compclust {

struct PipelineOptions {
    std::optional<int> k_override;  // must lie in [2, m-1]
    bool sqrt_distance = false;
};

// Everything one clustering run produces. Immutable once built; safe to
// share across threads.
struct AnalysisSnapshot {
    std::string label;
    Roster roster;                          // all agents seen
    std::vector<ProbabilityVector> vectors; // one per roster agent
    std::vector<std::string> excluded_agents;  // zero-support, not clustered
    std::int64_t composition_count = 0;
    DistanceMatrix distances;               // clustered agents only
    Dendrogram dendrogram;
    SilhouetteSweep sweep;                  // empty when fewer than 3 agents
    int chosen_k = 0;
    ClusterAssignment assignment;           // at chosen_k

    // Index into distances/assignment, or nullopt for excluded agents.
    std::optional<std::size_t> clustered_index(const std::string& agent) const;
    std::optional<int> cluster_of(const std::string& agent) const;
    const ProbabilityVector& vector_of(const std::string& agent) const;
};

// cooccur -> divergence -> hac -> diagnostics over already-expanded
// compositions. The chosen k is the silhouette-selected best_k unless
// overridden; with only two clustered agents the sweep is skipped and k = 1.
AnalysisSnapshot analyze_compositions(std::string label,
                                      const std::vector<TeamComposition>& comps,
                                      const PipelineOptions& options = {});

}  // namespace compclust
