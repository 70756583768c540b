#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "compclust/analysis.hpp"
#include "compclust/cooccur.hpp"
#include "compclust/divergence.hpp"
#include "compclust/hac.hpp"
#include "compclust/patch_impact.hpp"

namespace compclust {

// Fixed "%.17g" rendering; round-trips doubles exactly.
std::string fmt_g17(double value);

// FNV-1a 64-bit, used for input fingerprints in reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Dendrogram as a rooted Newick tree with ultrametric branch lengths
// (parent height minus child height; leaves sit at height zero).
std::string to_newick(const Dendrogram& dendro);

// Dendrogram as a DOT digraph for external rendering.
std::string to_dot(const Dendrogram& dendro);

nlohmann::ordered_json dendrogram_json(const Dendrogram& dendro);

std::string cooccurrence_csv(const CooccurrenceMatrix& matrix);
nlohmann::ordered_json cooccurrence_json(const CooccurrenceMatrix& matrix);

std::string vectors_csv(const std::vector<ProbabilityVector>& vectors, const Roster& roster);
nlohmann::ordered_json vectors_json(const std::vector<ProbabilityVector>& vectors,
                                    const Roster& roster);

std::string distance_csv(const DistanceMatrix& d);
nlohmann::ordered_json distance_json(const DistanceMatrix& d);

std::string assignment_csv(const ClusterAssignment& assignment);

std::string sweep_csv(const SilhouetteSweep& sweep);

}  // namespace compclust
