#pragma once

#include <span>
#include <string>
#include <vector>

#include "compclust/cooccur.hpp"

namespace compclust {

// Base-2 Kullback-Leibler divergence, sum_k p_k * log2(p_k / q_k), with
// 0 * log(0/x) = 0. Terms are summed in ascending index order so results are
// bit-reproducible. Throws InternalError when p_k > 0 with q_k = 0 (cannot
// happen when q is a mixture containing p).
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Jensen-Shannon divergence against the 50/50 mixture, base-2 logs, in [0,1].
double jsd(std::span<const double> p, std::span<const double> q);

// Both vectors must be defined and of equal dimension.
double jsd(const ProbabilityVector& a, const ProbabilityVector& b);

// Pairwise JSD over the defined vectors; symmetric with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::vector<std::string> labels, std::vector<double> values,
                   bool sqrt_applied = false);

    static constexpr int log_base = 2;

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
    bool sqrt_applied() const { return sqrt_applied_; }

    // Mean over all unordered pairs {i, j} drawn from `members`.
    double mean_pairwise(std::span<const std::size_t> members) const;

    DistanceMatrix scaled(double factor) const;  // test support (scale invariance)

private:
    std::vector<std::string> labels_;
    std::vector<double> d_;
    bool sqrt_applied_ = false;
};

// Builds the full matrix from the defined vectors in `vectors` (undefined
// ones are excluded). `sqrt_transform` stores sqrt(JSD), the metric variant.
// Throws ValidationError("nothing to cluster") with fewer than two defined
// vectors.
DistanceMatrix distance_matrix(const std::vector<ProbabilityVector>& vectors,
                               bool sqrt_transform = false);

}  // namespace compclust
