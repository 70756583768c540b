#include "compclust/hac.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "compclust/errors.hpp"

namespace compclust {

std::vector<std::vector<std::size_t>> ClusterAssignment::members_by_cluster() const {
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    return members;
}

namespace {

struct ActiveCluster {
    int node_id;
    int size;
    int rep;  // smallest leaf index, used for deterministic tie-breaking
};

}  // namespace

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
    const std::size_t m = d.size();
    if (m < 2) {
        throw ValidationError("clustering needs at least two points");
    }

    Dendrogram dendro;
    dendro.leaves = d.labels();
    dendro.merges.reserve(m - 1);

    // Working copy of the distance matrix, indexed by active-cluster slot.
    std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) dist[i][j] = d.at(i, j);
    }

    std::vector<ActiveCluster> active(m);
    for (std::size_t i = 0; i < m; ++i) {
        active[i] = {static_cast<int>(i), 1, static_cast<int>(i)};
    }
    std::vector<std::size_t> slots(m);
    std::iota(slots.begin(), slots.end(), std::size_t{0});

    int next_node = static_cast<int>(m);
    while (slots.size() > 1) {
        // Global minimum with (min rep, max rep) tie-break.
        std::size_t best_a = 0, best_b = 1;
        double best_dist = std::numeric_limits<double>::infinity();
        int best_lo = 0, best_hi = 0;
        for (std::size_t a = 0; a < slots.size(); ++a) {
            for (std::size_t b = a + 1; b < slots.size(); ++b) {
                const double dv = dist[slots[a]][slots[b]];
                const int ra = active[slots[a]].rep;
                const int rb = active[slots[b]].rep;
                const int lo = std::min(ra, rb);
                const int hi = std::max(ra, rb);
                if (dv < best_dist ||
                    (dv == best_dist && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
                    best_dist = dv;
                    best_a = a;
                    best_b = b;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        const std::size_t sa = slots[best_a];
        const std::size_t sb = slots[best_b];
        ActiveCluster& ca = active[sa];
        ActiveCluster& cb = active[sb];

        dendro.merges.push_back({std::min(ca.node_id, cb.node_id),
                                 std::max(ca.node_id, cb.node_id), best_dist,
                                 ca.size + cb.size});

        // Merge b into a's slot.
        for (std::size_t c : slots) {
            if (c == sa || c == sb) continue;
            double updated = 0.0;
            switch (linkage) {
                case Linkage::Average:
                    updated = (static_cast<double>(ca.size) * dist[sa][c] +
                               static_cast<double>(cb.size) * dist[sb][c]) /
                              static_cast<double>(ca.size + cb.size);
                    break;
                case Linkage::Single:
                    updated = std::min(dist[sa][c], dist[sb][c]);
                    break;
                case Linkage::Complete:
                    updated = std::max(dist[sa][c], dist[sb][c]);
                    break;
            }
            dist[sa][c] = updated;
            dist[c][sa] = updated;
        }
        ca.node_id = next_node++;
        ca.size += cb.size;
        ca.rep = std::min(ca.rep, cb.rep);
        slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    return dendro;
}

Dendrogram upgma(const DistanceMatrix& d) { return agglomerate(d, Linkage::Average); }

ClusterAssignment cut(const Dendrogram& dendro, int k) {
    const int m = static_cast<int>(dendro.leaf_count());
    if (k < 1 || k > m) {
        throw ValidationError("cut: k must be in [1, " + std::to_string(m) + "], got " +
                              std::to_string(k));
    }

    // Apply the first m-k merges; the rest stay undone.
    std::vector<int> parent(static_cast<std::size_t>(2 * m - 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find_root = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int t = 0; t < m - k; ++t) {
        const Merge& mg = dendro.merges[static_cast<std::size_t>(t)];
        const int node = m + t;
        parent[static_cast<std::size_t>(find_root(mg.left))] = node;
        parent[static_cast<std::size_t>(find_root(mg.right))] = node;
    }

    ClusterAssignment assignment;
    assignment.k = k;
    assignment.agents = dendro.leaves;
    assignment.labels.assign(static_cast<std::size_t>(m), -1);
    std::vector<int> cluster_of_root(static_cast<std::size_t>(2 * m - 1), -1);
    int next_label = 0;
    for (int leaf = 0; leaf < m; ++leaf) {
        const int root = find_root(leaf);
        if (cluster_of_root[static_cast<std::size_t>(root)] < 0) {
            cluster_of_root[static_cast<std::size_t>(root)] = next_label++;
        }
        assignment.labels[static_cast<std::size_t>(leaf)] =
            cluster_of_root[static_cast<std::size_t>(root)];
    }
    if (next_label != k) {
        throw InternalError("cut produced " + std::to_string(next_label) + " clusters, expected " +
                            std::to_string(k));
    }
    return assignment;
}

}  // namespace compclust
