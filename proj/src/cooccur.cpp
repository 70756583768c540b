#include "compclust/cooccur.hpp"

#include <numeric>

#include "compclust/errors.hpp"

namespace compclust {

CooccurrenceMatrix::CooccurrenceMatrix(Roster roster)
    : roster_(std::move(roster)), counts_(roster_.size() * roster_.size(), 0) {}

void CooccurrenceMatrix::add_pair(std::size_t i, std::size_t j) {
    if (i == j) {
        throw InternalError("co-occurrence pair with identical indices");
    }
    ++counts_[i * size() + j];
    ++counts_[j * size() + i];
}

std::int64_t CooccurrenceMatrix::row_sum(std::size_t i) const {
    const std::size_t n = size();
    return std::accumulate(counts_.begin() + static_cast<std::ptrdiff_t>(i * n),
                           counts_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n),
                           std::int64_t{0});
}

std::int64_t CooccurrenceMatrix::total_pairs() const {
    std::int64_t total = 0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) total += at(i, j);
    }
    return total;
}

CooccurrenceMatrix build_cooccurrence(const std::vector<TeamComposition>& comps,
                                      const Roster& roster) {
    CooccurrenceMatrix matrix(roster);
    std::array<std::size_t, 5> idx{};
    for (const auto& comp : comps) {
        for (std::size_t a = 0; a < 5; ++a) {
            idx[a] = roster.index_of(comp.agents[a]);  // throws if unknown
        }
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = a + 1; b < 5; ++b) matrix.add_pair(idx[a], idx[b]);
        }
    }
    return matrix;
}

std::vector<ProbabilityVector> normalize(const CooccurrenceMatrix& matrix) {
    const std::size_t n = matrix.size();
    std::vector<ProbabilityVector> vectors;
    vectors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ProbabilityVector v;
        v.agent = matrix.roster().name(i);
        v.self_index = i;
        v.support_count = matrix.row_sum(i);
        v.probs.assign(n, 0.0);
        if (v.support_count > 0) {
            const double denom = static_cast<double>(v.support_count);
            for (std::size_t j = 0; j < n; ++j) {
                v.probs[j] = static_cast<double>(matrix.at(i, j)) / denom;
            }
        }
        vectors.push_back(std::move(v));
    }
    return vectors;
}

std::vector<double> l1_normalize(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) {
        if (x < 0.0) throw InternalError("l1_normalize: negative component");
        sum += x;
    }
    if (sum <= 0.0) throw InternalError("l1_normalize: zero-sum vector");
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x /= sum;
    return out;
}

}  // namespace compclust
