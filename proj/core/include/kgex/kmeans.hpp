#pragma once

#include <cstdint>
#include <vector>

#include "kgex/embedding.hpp"
#include "kgex/vec.hpp"

namespace kgex {

constexpr size_t kDefaultClusterCount = 3;

struct ClusterModel {
    std::vector<Vec> centroids;
    std::vector<std::uint32_t> assignment;   // per entity id
    std::vector<double> objective_history;   // sum of squared distances per iteration

    size_t cluster_count() const { return centroids.size(); }
    std::uint32_t cluster_of(EntityId v) const;

    /// Index of the nearest centroid under Euclidean distance; ties go to
    /// the lowest centroid index.
    std::uint32_t assign(const Vec& v) const;
};

/// Lloyd's algorithm over the store's base entity vectors (the
/// pre-aggregation semantic space). Deterministic for a fixed seed: the
/// first centroid is drawn with a seeded generator, the rest by
/// farthest-point selection; iteration stops when no assignment changes or
/// after max_iters. Clusters that empty out are re-seeded with the point
/// farthest from its assigned centroid.
ClusterModel kmeans_fit(const EmbeddingStore& store, size_t k, std::uint64_t seed,
                        size_t max_iters = 100);

/// Same algorithm over an explicit point set (one row per entity id).
ClusterModel kmeans_fit_points(const std::vector<Vec>& points, size_t k,
                               std::uint64_t seed, size_t max_iters = 100);

} // namespace kgex
