#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "compclust/ingest.hpp"

namespace compclust {

// Symmetric joint-pick counts over the roster. Zero diagonal: an agent is
// never its own teammate.
class CooccurrenceMatrix {
public:
    explicit CooccurrenceMatrix(Roster roster);

    const Roster& roster() const { return roster_; }
    std::size_t size() const { return roster_.size(); }

    std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * size() + j]; }
    void add_pair(std::size_t i, std::size_t j);

    std::int64_t row_sum(std::size_t i) const;
    // Sum of C_ij over i < j; equals 10x the number of aggregated compositions.
    std::int64_t total_pairs() const;

private:
    Roster roster_;
    std::vector<std::int64_t> counts_;
};

// L1-normalized teammate distribution for one agent.
struct ProbabilityVector {
    std::string agent;
    std::size_t self_index = 0;
    std::vector<double> probs;        // length n, probs[self_index] == 0
    std::int64_t support_count = 0;   // co-occurrence mass before normalization

    // Zero-support agents have no teammate distribution and are excluded
    // from the distance and clustering stages.
    bool defined() const { return support_count > 0; }
};

// Each 5-agent composition contributes its 10 unordered pairs.
CooccurrenceMatrix build_cooccurrence(const std::vector<TeamComposition>& comps,
                                      const Roster& roster);

// One vector per roster agent, in roster order. Rows with zero sum are
// flagged undefined rather than divided.
std::vector<ProbabilityVector> normalize(const CooccurrenceMatrix& matrix);

// v / ||v||_1. Throws InternalError on a zero or negative-sum vector.
std::vector<double> l1_normalize(std::span<const double> v);

}  // namespace compclust
