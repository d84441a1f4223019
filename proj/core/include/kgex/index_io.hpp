#pragma once

#include <string>

#include "kgex/config.hpp"
#include "kgex/embedding.hpp"
#include "kgex/graph.hpp"
#include "kgex/kmeans.hpp"

namespace kgex {

/// On-disk snapshot of a built index: graph.txt, embeddings.txt,
/// clusters.txt and manifest.json under one directory. Every file carries
/// a magic header and format version; loaders reject mismatches. Output is
/// byte-stable for identical inputs (dense-id iteration order, shortest
/// round-trip float formatting).
inline constexpr int kIndexFormatVersion = 1;

void save_index(const std::string& dir, const KnowledgeGraph& g, const EmbeddingStore& store,
                const ClusterModel& clusters, const EngineConfig& config);

struct LoadedIndex {
    KnowledgeGraph graph;
    EmbeddingStore store;
    ClusterModel clusters;
};

LoadedIndex load_index(const std::string& dir);

/// Shortest round-trip decimal form of a double (locale-independent).
std::string format_double(double x);

} // namespace kgex
