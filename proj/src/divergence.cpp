#include "compclust/divergence.hpp"

#include <cmath>

#include "compclust/errors.hpp"

namespace compclust {

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw InternalError("kl_divergence: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        if (q[k] == 0.0) {
            throw InternalError("kl_divergence: p has mass where q is zero");
        }
        sum += p[k] * std::log2(p[k] / q[k]);
    }
    return sum;
}

double jsd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw InternalError("jsd: dimension mismatch");
    }
    std::vector<double> mixture(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        mixture[k] = 0.5 * (p[k] + q[k]);
    }
    double value = 0.5 * (kl_divergence(p, mixture) + kl_divergence(q, mixture));
    // Guard against round-off leaking past the theoretical [0,1] range.
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return value;
}

double jsd(const ProbabilityVector& a, const ProbabilityVector& b) {
    if (!a.defined() || !b.defined()) {
        throw InternalError("jsd: undefined probability vector for '" +
                            (a.defined() ? b.agent : a.agent) + "'");
    }
    return jsd(std::span<const double>(a.probs), std::span<const double>(b.probs));
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> values,
                               bool sqrt_applied)
    : labels_(std::move(labels)), d_(std::move(values)), sqrt_applied_(sqrt_applied) {
    if (d_.size() != labels_.size() * labels_.size()) {
        throw InternalError("DistanceMatrix: values/labels size mismatch");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (at(i, i) != 0.0) throw InternalError("DistanceMatrix: nonzero diagonal");
        for (std::size_t j = 0; j < size(); ++j) {
            if (at(i, j) < 0.0) throw InternalError("DistanceMatrix: negative entry");
            if (at(i, j) != at(j, i)) throw InternalError("DistanceMatrix: not symmetric");
        }
    }
}

double DistanceMatrix::mean_pairwise(std::span<const std::size_t> members) const {
    if (members.size() < 2) {
        throw InternalError("mean_pairwise: needs at least two members");
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            sum += at(members[a], members[b]);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
    std::vector<double> values = d_;
    for (double& x : values) x *= factor;
    return DistanceMatrix(labels_, std::move(values), sqrt_applied_);
}

DistanceMatrix distance_matrix(const std::vector<ProbabilityVector>& vectors,
                               bool sqrt_transform) {
    std::vector<const ProbabilityVector*> defined;
    for (const auto& v : vectors) {
        if (v.defined()) defined.push_back(&v);
    }
    if (defined.size() < 2) {
        throw ValidationError("nothing to cluster");
    }

    const std::size_t m = defined.size();
    std::vector<std::string> labels;
    labels.reserve(m);
    for (const auto* v : defined) labels.push_back(v->agent);

    std::vector<double> values(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double d = jsd(*defined[i], *defined[j]);
            if (sqrt_transform) d = std::sqrt(d);
            values[i * m + j] = d;
            values[j * m + i] = d;
        }
    }
    return DistanceMatrix(std::move(labels), std::move(values), sqrt_transform);
}

}  // namespace compclust
