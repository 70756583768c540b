#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compclust/analysis.hpp"

namespace compclust {

// Arithmetic mean of member probability vectors. The mean of simplex points
// stays on the simplex, so the result is itself a valid distribution.
std::vector<double> centroid(const std::vector<const ProbabilityVector*>& members);

struct ClusterCentroid {
    int cluster_id = 0;
    std::vector<double> values;
};

ClusterCentroid cluster_centroid(const AnalysisSnapshot& snap, int cluster_id);

struct ClusterMatch {
    int pre_id = 0;
    int post_id = 0;
    double jaccard = 0.0;       // member-set overlap, always > 0 for a match
    double centroid_jsd = 0.0;  // tie-break metric, union-roster aligned
};

struct ClusterMatching {
    std::vector<ClusterMatch> matches;  // sorted by pre_id
    std::vector<int> unmatched_pre;
    std::vector<int> unmatched_post;

    std::optional<int> match_of_pre(int pre_id) const;
};

// Greedy maximum-weight matching on Jaccard overlap of member sets; ties go
// to the smaller centroid JSD, then to the smaller cluster ids. Clusters with
// zero overlap stay unmatched. Throws ValidationError when the snapshots
// share no clustered agent.
ClusterMatching match_clusters(const AnalysisSnapshot& pre, const AnalysisSnapshot& post);

// |JSD(v_post, mu_post) - JSD(v_pre, mu_pre)| where each centroid is taken
// over the agent's own cluster in that snapshot. The agent must be clustered
// in both.
double delta_centroid(const std::string& agent, const AnalysisSnapshot& pre,
                      const AnalysisSnapshot& post);

// Mean pairwise distance within a cluster; nullopt for singletons.
std::optional<double> mean_intra_distance(const AnalysisSnapshot& snap, int cluster_id);

struct InterDistanceDelta {
    std::optional<double> pre_mean;
    std::optional<double> post_mean;
    std::optional<double> delta;  // |post - pre| when both means exist
    std::string null_reason;      // why delta is null, otherwise empty
};

// Mean pairwise JSD within each cluster of a matched pair, and the absolute
// change. A singleton on either side yields a null delta with a reason.
InterDistanceDelta delta_inter(int pre_cluster, int post_cluster, const AnalysisSnapshot& pre,
                               const AnalysisSnapshot& post);

struct AgentImpact {
    std::string agent;
    int pre_cluster = 0;
    int post_cluster = 0;
    bool matched = false;  // post cluster is the match of the pre cluster
    double delta_centroid = 0.0;
};

struct ClusterImpact {
    int pre_id = 0;
    int post_id = 0;
    double jaccard = 0.0;
    std::optional<double> pre_mean_inter;
    std::optional<double> post_mean_inter;
    std::optional<double> delta_inter;
    std::string null_reason;  // set when delta_inter is null
};

struct MembershipShifts {
    std::vector<std::string> shifted;  // matched-cluster changed
    std::vector<std::string> added;    // clustered post only
    std::vector<std::string> removed;  // clustered pre only
};

struct PatchImpactReport {
    std::string pre_label;
    std::string post_label;
    int pre_k = 0;
    int post_k = 0;
    ClusterMatching matching;
    std::vector<AgentImpact> per_agent;      // shared agents, roster order
    std::vector<ClusterImpact> per_cluster;  // matched pairs, by pre_id
    MembershipShifts shifts;
};

// Agents whose post cluster is not the match of their pre cluster, plus the
// roster diff (added/removed agents listed separately).
MembershipShifts membership_shifts(const AnalysisSnapshot& pre, const AnalysisSnapshot& post,
                                   const ClusterMatching& matching);

PatchImpactReport compare_snapshots(const AnalysisSnapshot& pre, const AnalysisSnapshot& post);

}  // namespace compclust
