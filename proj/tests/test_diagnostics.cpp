#include <doctest.h>

#include <random>

#include "compclust/diagnostics.hpp"
#include "compclust/errors.hpp"
#include "support/oracles.hpp"

using namespace compclust;

namespace {

DistanceMatrix matrix_from(const std::vector<std::vector<double>>& d) {
    const std::size_t m = d.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("P" + std::to_string(i));
    std::vector<double> flat(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = d[i][j];
    }
    return DistanceMatrix(std::move(labels), std::move(flat));
}

ClusterAssignment assignment_from(const DistanceMatrix& d, std::vector<int> labels, int k) {
    ClusterAssignment a;
    a.k = k;
    a.agents = d.labels();
    a.labels = std::move(labels);
    return a;
}

// Two tight pairs: d(0,1) = d(2,3) = 0.1, all cross distances 0.9.
std::vector<std::vector<double>> two_tight_pairs() {
    std::vector<std::vector<double>> d(4, std::vector<double>(4, 0.9));
    for (std::size_t i = 0; i < 4; ++i) d[i][i] = 0.0;
    d[0][1] = d[1][0] = 0.1;
    d[2][3] = d[3][2] = 0.1;
    return d;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("two tight pairs score (b-a)/b = 8/9 at k=2") {
    auto raw = two_tight_pairs();
    DistanceMatrix d = matrix_from(raw);
    double score = silhouette(d, assignment_from(d, {0, 0, 1, 1}, 2));
    CHECK(score == doctest::Approx(0.888888888888888889).epsilon(1e-12));
    CHECK(std::abs(score - 0.8889) < 1e-4);
}

TEST_CASE("all singletons score zero") {
    auto raw = two_tight_pairs();
    DistanceMatrix d = matrix_from(raw);
    CHECK(silhouette(d, assignment_from(d, {0, 1, 2, 3}, 4)) == 0.0);
}

TEST_CASE("k below 2 is rejected") {
    auto raw = two_tight_pairs();
    DistanceMatrix d = matrix_from(raw);
    CHECK_THROWS_AS(silhouette(d, assignment_from(d, {0, 0, 0, 0}, 1)), ValidationError);
}

TEST_CASE("sweep over the two tight pairs selects k=2") {
    DistanceMatrix d = matrix_from(two_tight_pairs());
    Dendrogram dendro = upgma(d);
    SilhouetteSweep sweep = sweep_k(d, dendro);
    REQUIRE(sweep.scores.size() == 2);  // k = 2, 3
    CHECK(sweep.scores[0].first == 2);
    CHECK(sweep.best_k == 2);
    CHECK(sweep.best_score == doctest::Approx(0.888888888888888889).epsilon(1e-12));
    // k=3 leaves one pair plus two singletons: (8/9 + 8/9 + 0 + 0) / 4.
    CHECK(sweep.scores[1].second == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("three equidistant points: only k=2 is in range") {
    std::vector<std::vector<double>> raw(3, std::vector<double>(3, 0.5));
    for (std::size_t i = 0; i < 3; ++i) raw[i][i] = 0.0;
    DistanceMatrix d = matrix_from(raw);
    SilhouetteSweep sweep = sweep_k(d, upgma(d));
    REQUIRE(sweep.scores.size() == 1);
    CHECK(sweep.scores[0].first == 2);
    CHECK(sweep.best_k == 2);
}

TEST_CASE("sweep needs at least three points") {
    DistanceMatrix d({"A", "B"}, {0.0, 0.3, 0.3, 0.0});
    CHECK_THROWS_AS(sweep_k(d, upgma(d)), ValidationError);
}

TEST_CASE("singleton s(i) contributes zero rather than skewing the mean") {
    // One pair and one singleton.
    std::vector<std::vector<double>> raw(3, std::vector<double>(3, 0.8));
    for (std::size_t i = 0; i < 3; ++i) raw[i][i] = 0.0;
    raw[0][1] = raw[1][0] = 0.2;
    DistanceMatrix d = matrix_from(raw);
    auto values = silhouette_values(d, assignment_from(d, {0, 0, 1}, 2));
    CHECK(values[2] == 0.0);
    CHECK(values[0] == doctest::Approx((0.8 - 0.2) / 0.8).epsilon(1e-12));
}

TEST_CASE("scale invariance: distances times c leave scores unchanged") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 5 + static_cast<std::size_t>(trial % 6);
        DistanceMatrix d = matrix_from(oracles::random_distance_matrix(rng, m));
        Dendrogram dendro = upgma(d);
        const int k = 2 + static_cast<int>(rng() % (m - 2));
        ClusterAssignment assignment = cut(dendro, k);

        const double base = silhouette(d, assignment);
        for (double c : {0.5, 3.0, 1000.0}) {
            const double scaled = silhouette(d.scaled(c), assignment);
            CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("oracle equivalence against the naive double loop") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 4 + static_cast<std::size_t>(trial % 9);
        auto raw = oracles::random_distance_matrix(rng, m);
        DistanceMatrix d = matrix_from(raw);
        Dendrogram dendro = upgma(d);
        for (int k = 2; k <= static_cast<int>(m) - 1; ++k) {
            ClusterAssignment assignment = cut(dendro, k);
            const double expected = oracles::naive_silhouette(raw, assignment.labels);
            CHECK(silhouette(d, assignment) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("every per-point value stays within [-1, 1]") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 4 + static_cast<std::size_t>(trial % 8);
        DistanceMatrix d = matrix_from(oracles::random_distance_matrix(rng, m));
        Dendrogram dendro = upgma(d);
        for (int k = 2; k <= static_cast<int>(m) - 1; ++k) {
            for (double s : silhouette_values(d, cut(dendro, k))) {
                CHECK(s >= -1.0);
                CHECK(s <= 1.0);
            }
        }
    }
}

}  // TEST_SUITE
