#pragma once

#include <utility>
#include <vector>

#include "compclust/divergence.hpp"
#include "compclust/hac.hpp"

namespace compclust {

struct SilhouetteSweep {
    std::vector<std::pair<int, double>> scores;  // (k, mean silhouette), k ascending
    int best_k = 0;       // smallest k attaining the maximum score
    double best_score = 0.0;
};

// Per-point silhouette values s(i) = (b(i) - a(i)) / max(a(i), b(i)) over the
// precomputed distance matrix. Singletons score 0 by convention, as does the
// degenerate max(a, b) = 0 case. Requires k >= 2.
std::vector<double> silhouette_values(const DistanceMatrix& d,
                                      const ClusterAssignment& assignment);

// Mean of silhouette_values.
double silhouette(const DistanceMatrix& d, const ClusterAssignment& assignment);

// Evaluates silhouette at every k in [2, m-1] using cut(dendro, k).
// Requires m >= 3 (otherwise the sweep range is empty).
SilhouetteSweep sweep_k(const DistanceMatrix& d, const Dendrogram& dendro);

}  // namespace compclust
