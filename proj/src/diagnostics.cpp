#include "compclust/diagnostics.hpp"

#include <limits>

#include "compclust/errors.hpp"

namespace compclust {

std::vector<double> silhouette_values(const DistanceMatrix& d,
                                      const ClusterAssignment& assignment) {
    const std::size_t m = d.size();
    if (assignment.labels.size() != m) {
        throw InternalError("silhouette: assignment does not cover the distance matrix");
    }
    if (assignment.k < 2) {
        throw ValidationError("silhouette requires at least two clusters");
    }
    const std::size_t k = static_cast<std::size_t>(assignment.k);

    std::vector<std::size_t> cluster_sizes(k, 0);
    for (int label : assignment.labels) ++cluster_sizes[static_cast<std::size_t>(label)];

    std::vector<double> values(m, 0.0);
    std::vector<double> sum_to_cluster(k);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t own = static_cast<std::size_t>(assignment.labels[i]);
        if (cluster_sizes[own] == 1) {
            values[i] = 0.0;  // singleton convention
            continue;
        }
        std::fill(sum_to_cluster.begin(), sum_to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            sum_to_cluster[static_cast<std::size_t>(assignment.labels[j])] += d.at(i, j);
        }
        const double a = sum_to_cluster[own] / static_cast<double>(cluster_sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || cluster_sizes[c] == 0) continue;
            b = std::min(b, sum_to_cluster[c] / static_cast<double>(cluster_sizes[c]));
        }
        const double denom = std::max(a, b);
        values[i] = (denom > 0.0) ? (b - a) / denom : 0.0;
    }
    return values;
}

double silhouette(const DistanceMatrix& d, const ClusterAssignment& assignment) {
    const std::vector<double> values = silhouette_values(d, assignment);
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

SilhouetteSweep sweep_k(const DistanceMatrix& d, const Dendrogram& dendro) {
    const std::size_t m = d.size();
    if (m < 3) {
        throw ValidationError("silhouette sweep needs at least three points");
    }
    if (dendro.leaf_count() != m) {
        throw InternalError("sweep_k: dendrogram does not match the distance matrix");
    }

    SilhouetteSweep sweep;
    for (int k = 2; k <= static_cast<int>(m) - 1; ++k) {
        const double score = silhouette(d, cut(dendro, k));
        sweep.scores.emplace_back(k, score);
        // Strict > keeps the smallest k on ties.
        if (sweep.scores.size() == 1 || score > sweep.best_score) {
            sweep.best_k = k;
            sweep.best_score = score;
        }
    }
    return sweep;
}

}  // namespace compclust
