#include "compclust/patch_impact.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "compclust/errors.hpp"

namespace compclust {

std::vector<double> centroid(const std::vector<const ProbabilityVector*>& members) {
    if (members.empty()) {
        throw ValidationError("centroid of an empty cluster");
    }
    const std::size_t n = members.front()->probs.size();
    std::vector<double> mean(n, 0.0);
    for (const auto* member : members) {
        if (member->probs.size() != n) {
            throw InternalError("centroid: mixed vector dimensions");
        }
        for (std::size_t k = 0; k < n; ++k) mean[k] += member->probs[k];
    }
    const double count = static_cast<double>(members.size());
    for (double& x : mean) x /= count;
    return mean;
}

ClusterCentroid cluster_centroid(const AnalysisSnapshot& snap, int cluster_id) {
    std::vector<const ProbabilityVector*> members;
    for (std::size_t i = 0; i < snap.assignment.labels.size(); ++i) {
        if (snap.assignment.labels[i] == cluster_id) {
            members.push_back(&snap.vector_of(snap.assignment.agents[i]));
        }
    }
    return ClusterCentroid{cluster_id, centroid(members)};
}

std::optional<int> ClusterMatching::match_of_pre(int pre_id) const {
    for (const auto& match : matches) {
        if (match.pre_id == pre_id) return match.post_id;
    }
    return std::nullopt;
}

namespace {

std::vector<std::set<std::string>> member_key_sets(const AnalysisSnapshot& snap) {
    std::vector<std::set<std::string>> sets(static_cast<std::size_t>(snap.chosen_k));
    for (std::size_t i = 0; i < snap.assignment.labels.size(); ++i) {
        sets[static_cast<std::size_t>(snap.assignment.labels[i])].insert(
            fold_name(snap.assignment.agents[i]));
    }
    return sets;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Embeds a snapshot-space distribution into the union agent space so
// centroids from different rosters are comparable.
std::vector<double> align_to_union(const std::vector<double>& v, const Roster& roster,
                                   const std::vector<std::string>& union_keys) {
    std::vector<double> out(union_keys.size(), 0.0);
    for (std::size_t i = 0; i < roster.size(); ++i) {
        const std::string key = fold_name(roster.name(i));
        const auto it = std::lower_bound(union_keys.begin(), union_keys.end(), key);
        out[static_cast<std::size_t>(it - union_keys.begin())] = v[i];
    }
    return out;
}

}  // namespace

ClusterMatching match_clusters(const AnalysisSnapshot& pre, const AnalysisSnapshot& post) {
    const auto pre_sets = member_key_sets(pre);
    const auto post_sets = member_key_sets(post);

    bool shares_agent = false;
    for (const auto& s : pre_sets) {
        for (const auto& key : s) {
            for (const auto& t : post_sets) {
                if (t.count(key)) {
                    shares_agent = true;
                    break;
                }
            }
            if (shares_agent) break;
        }
        if (shares_agent) break;
    }
    if (!shares_agent) {
        throw ValidationError("snapshots share no clustered agents; nothing to match");
    }

    std::vector<std::string> union_keys;
    for (const auto& name : pre.roster.names()) union_keys.push_back(fold_name(name));
    for (const auto& name : post.roster.names()) union_keys.push_back(fold_name(name));
    std::sort(union_keys.begin(), union_keys.end());
    union_keys.erase(std::unique(union_keys.begin(), union_keys.end()), union_keys.end());

    struct Candidate {
        double jaccard;
        double centroid_jsd;
        int pre_id;
        int post_id;
    };
    std::vector<Candidate> candidates;
    for (int p = 0; p < pre.chosen_k; ++p) {
        const auto mu_pre = align_to_union(cluster_centroid(pre, p).values, pre.roster, union_keys);
        for (int q = 0; q < post.chosen_k; ++q) {
            const double jac =
                jaccard(pre_sets[static_cast<std::size_t>(p)], post_sets[static_cast<std::size_t>(q)]);
            if (jac <= 0.0) continue;
            const auto mu_post =
                align_to_union(cluster_centroid(post, q).values, post.roster, union_keys);
            candidates.push_back({jac, jsd(mu_pre, mu_post), p, q});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
        if (a.centroid_jsd != b.centroid_jsd) return a.centroid_jsd < b.centroid_jsd;
        if (a.pre_id != b.pre_id) return a.pre_id < b.pre_id;
        return a.post_id < b.post_id;
    });

    ClusterMatching matching;
    std::vector<bool> pre_used(static_cast<std::size_t>(pre.chosen_k), false);
    std::vector<bool> post_used(static_cast<std::size_t>(post.chosen_k), false);
    for (const auto& cand : candidates) {
        if (pre_used[static_cast<std::size_t>(cand.pre_id)] ||
            post_used[static_cast<std::size_t>(cand.post_id)]) {
            continue;
        }
        pre_used[static_cast<std::size_t>(cand.pre_id)] = true;
        post_used[static_cast<std::size_t>(cand.post_id)] = true;
        matching.matches.push_back({cand.pre_id, cand.post_id, cand.jaccard, cand.centroid_jsd});
    }
    std::sort(matching.matches.begin(), matching.matches.end(),
              [](const ClusterMatch& a, const ClusterMatch& b) { return a.pre_id < b.pre_id; });
    for (int p = 0; p < pre.chosen_k; ++p) {
        if (!pre_used[static_cast<std::size_t>(p)]) matching.unmatched_pre.push_back(p);
    }
    for (int q = 0; q < post.chosen_k; ++q) {
        if (!post_used[static_cast<std::size_t>(q)]) matching.unmatched_post.push_back(q);
    }
    return matching;
}

double delta_centroid(const std::string& agent, const AnalysisSnapshot& pre,
                      const AnalysisSnapshot& post) {
    const auto pre_cluster = pre.cluster_of(agent);
    const auto post_cluster = post.cluster_of(agent);
    if (!pre_cluster || !post_cluster) {
        throw InternalError("delta_centroid: agent '" + agent +
                            "' is not clustered in both snapshots");
    }
    const auto mu_pre = cluster_centroid(pre, *pre_cluster);
    const auto mu_post = cluster_centroid(post, *post_cluster);
    const double d_pre = jsd(pre.vector_of(agent).probs, mu_pre.values);
    const double d_post = jsd(post.vector_of(agent).probs, mu_post.values);
    return std::abs(d_post - d_pre);
}

std::optional<double> mean_intra_distance(const AnalysisSnapshot& snap, int cluster_id) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < snap.assignment.labels.size(); ++i) {
        if (snap.assignment.labels[i] == cluster_id) members.push_back(i);
    }
    if (members.size() < 2) return std::nullopt;
    return snap.distances.mean_pairwise(members);
}

InterDistanceDelta delta_inter(int pre_cluster, int post_cluster, const AnalysisSnapshot& pre,
                               const AnalysisSnapshot& post) {
    InterDistanceDelta result;
    result.pre_mean = mean_intra_distance(pre, pre_cluster);
    result.post_mean = mean_intra_distance(post, post_cluster);
    if (result.pre_mean && result.post_mean) {
        result.delta = std::abs(*result.post_mean - *result.pre_mean);
    } else if (!result.pre_mean && !result.post_mean) {
        result.null_reason = "singleton pre and post clusters";
    } else if (!result.pre_mean) {
        result.null_reason = "singleton pre cluster";
    } else {
        result.null_reason = "singleton post cluster";
    }
    return result;
}

MembershipShifts membership_shifts(const AnalysisSnapshot& pre, const AnalysisSnapshot& post,
                                   const ClusterMatching& matching) {
    MembershipShifts shifts;
    for (const auto& agent : pre.distances.labels()) {
        const auto post_cluster = post.cluster_of(agent);
        if (!post_cluster) {
            shifts.removed.push_back(agent);
            continue;
        }
        const int pre_cluster = *pre.cluster_of(agent);
        const auto matched = matching.match_of_pre(pre_cluster);
        if (!matched || *matched != *post_cluster) {
            shifts.shifted.push_back(agent);
        }
    }
    for (const auto& agent : post.distances.labels()) {
        if (!pre.cluster_of(agent)) shifts.added.push_back(agent);
    }
    return shifts;
}

PatchImpactReport compare_snapshots(const AnalysisSnapshot& pre, const AnalysisSnapshot& post) {
    PatchImpactReport report;
    report.pre_label = pre.label;
    report.post_label = post.label;
    report.pre_k = pre.chosen_k;
    report.post_k = post.chosen_k;
    report.matching = match_clusters(pre, post);

    for (const auto& agent : pre.distances.labels()) {
        const auto post_cluster = post.cluster_of(agent);
        if (!post_cluster) continue;  // roster diff, listed in shifts.removed
        AgentImpact impact;
        impact.agent = agent;
        impact.pre_cluster = *pre.cluster_of(agent);
        impact.post_cluster = *post_cluster;
        const auto matched = report.matching.match_of_pre(impact.pre_cluster);
        impact.matched = matched && *matched == impact.post_cluster;
        impact.delta_centroid = delta_centroid(agent, pre, post);
        report.per_agent.push_back(std::move(impact));
    }

    for (const auto& match : report.matching.matches) {
        ClusterImpact impact;
        impact.pre_id = match.pre_id;
        impact.post_id = match.post_id;
        impact.jaccard = match.jaccard;
        const InterDistanceDelta inter = delta_inter(match.pre_id, match.post_id, pre, post);
        impact.pre_mean_inter = inter.pre_mean;
        impact.post_mean_inter = inter.post_mean;
        impact.delta_inter = inter.delta;
        impact.null_reason = inter.null_reason;
        report.per_cluster.push_back(std::move(impact));
    }

    report.shifts = membership_shifts(pre, post, report.matching);
    return report;
}

}  // namespace compclust
