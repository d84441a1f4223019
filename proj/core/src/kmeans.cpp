#include "kgex/kmeans.hpp"

#include <limits>
#include <random>

#include "kgex/error.hpp"

namespace kgex {

namespace {

double sqdist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::uint32_t nearest_centroid(const std::vector<Vec>& centroids, const Vec& p) {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::uint32_t c = 0; c < centroids.size(); ++c) {
        double d = sqdist(centroids[c], p);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

} // namespace

std::uint32_t ClusterModel::cluster_of(EntityId v) const {
    if (v.value >= assignment.size()) {
        throw LookupError("no cluster assignment for entity id " + std::to_string(v.value));
    }
    return assignment[v.value];
}

std::uint32_t ClusterModel::assign(const Vec& v) const {
    if (centroids.empty()) throw Error("cluster model has no centroids");
    return nearest_centroid(centroids, v);
}

ClusterModel kmeans_fit_points(const std::vector<Vec>& points, size_t k,
                               std::uint64_t seed, size_t max_iters) {
    const size_t n = points.size();
    if (k < 2) throw ConfigError("cluster count must be >= 2");
    if (k > n) {
        throw ConfigError("cluster count " + std::to_string(k) +
                          " exceeds point count " + std::to_string(n));
    }

    ClusterModel model;
    model.centroids.reserve(k);

    // Farthest-point init: seeded first pick, then maximize distance to the
    // nearest already-chosen centroid. Ties resolve to the lowest index.
    std::mt19937_64 rng(seed);
    model.centroids.push_back(points[rng() % n]);
    std::vector<double> min_d(n);
    while (model.centroids.size() < k) {
        size_t far_idx = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < n; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const Vec& c : model.centroids) d = std::min(d, sqdist(c, points[i]));
            min_d[i] = d;
            if (d > far_d) {
                far_d = d;
                far_idx = i;
            }
        }
        model.centroids.push_back(points[far_idx]);
    }

    model.assignment.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        model.assignment[i] = nearest_centroid(model.centroids, points[i]);
    }

    const size_t dim = points.front().size();
    for (size_t iter = 0; iter < max_iters; ++iter) {
        // Mean update.
        std::vector<Vec> sums(k, Vec(dim, 0.0));
        std::vector<size_t> counts(k, 0);
        for (size_t i = 0; i < n; ++i) {
            vec::add_inplace(sums[model.assignment[i]], points[i]);
            ++counts[model.assignment[i]];
        }
        for (size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            vec::scale_inplace(sums[c], 1.0 / static_cast<double>(counts[c]));
            model.centroids[c] = std::move(sums[c]);
        }
        // Re-seed any empty cluster with the globally farthest point.
        for (size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            size_t far_idx = 0;
            double far_d = -1.0;
            for (size_t i = 0; i < n; ++i) {
                double d = sqdist(points[i], model.centroids[model.assignment[i]]);
                if (d > far_d) {
                    far_d = d;
                    far_idx = i;
                }
            }
            model.centroids[c] = points[far_idx];
        }

        // Assignment update.
        size_t changed = 0;
        double objective = 0.0;
        for (size_t i = 0; i < n; ++i) {
            std::uint32_t c = nearest_centroid(model.centroids, points[i]);
            if (c != model.assignment[i]) {
                model.assignment[i] = c;
                ++changed;
            }
            objective += sqdist(model.centroids[c], points[i]);
        }
        model.objective_history.push_back(objective);
        if (changed == 0) break;
    }
    return model;
}

ClusterModel kmeans_fit(const EmbeddingStore& store, size_t k, std::uint64_t seed,
                        size_t max_iters) {
    if (store.entity_base_vectors().empty()) {
        throw Error("kmeans_fit requires entity base vectors");
    }
    return kmeans_fit_points(store.entity_base_vectors(), k, seed, max_iters);
}

} // namespace kgex
