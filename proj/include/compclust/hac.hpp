#pragma once

#include <string>
#include <vector>

#include "compclust/divergence.hpp"

namespace compclust {

// One agglomeration step. Node ids follow the usual convention: 0..m-1 are
// leaves in label order, m+t is the cluster created by merge t.
struct Merge {
    int left = 0;
    int right = 0;
    double height = 0.0;  // average inter-cluster dissimilarity at the merge
    int size = 0;         // leaves in the merged cluster
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;  // length m-1, heights non-decreasing

    std::size_t leaf_count() const { return leaves.size(); }
};

// Flat k-partition. Cluster ids run 0..k-1 in order of each cluster's first
// member in leaf order, so labelings are deterministic.
struct ClusterAssignment {
    int k = 0;
    std::vector<std::string> agents;  // same order as dendrogram leaves
    std::vector<int> labels;          // labels[i] is the cluster of agents[i]

    std::vector<std::vector<std::size_t>> members_by_cluster() const;
};

enum class Linkage { Average, Single, Complete };

// Average-linkage (UPGMA) agglomeration: repeatedly merge the pair of
// clusters with minimal average inter-cluster dissimilarity, updating
// dist(AB, C) = (|A| d(A,C) + |B| d(B,C)) / (|A| + |B|).
//
// Ties on the minimal distance pick the pair whose (smaller, larger) pair of
// cluster representatives -- each cluster's smallest leaf index -- is
// lexicographically least.
Dendrogram upgma(const DistanceMatrix& d);

// Same engine with the linkage update swapped out; kept for experimentation.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage);

// Undoes the last k-1 merges to obtain exactly k clusters.
ClusterAssignment cut(const Dendrogram& dendro, int k);

}  // namespace compclust
