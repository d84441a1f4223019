#pragma once

#include <string>
#include <vector>

#include "kgex/catalog.hpp"
#include "kgex/graph.hpp"
#include "kgex/path.hpp"

namespace kgex {

constexpr size_t kMaxHopDepth = 3;
constexpr size_t kDefaultCandidateCap = 512;

struct PathEnumerationOptions {
    size_t max_hops = kMaxHopDepth;   // 1..3; deeper traversal drifts
    size_t cap = kDefaultCandidateCap;
};

struct PathCandidates {
    std::vector<ReasoningPath> paths;
    bool truncated = false;
};

/// All simple reasoning paths for one (user, target) query:
///   1-hop: every edge incident to the target (explicit attributes),
///   2-hop: history item - entity - target,
///   3-hop: history item - entity - entity - target.
/// Output is deduplicated and sorted by (hop count, entity sequence,
/// relation sequence), then truncated at opts.cap with a flag.
PathCandidates enumerate_paths(const KnowledgeGraph& g, const ItemCatalog& cat,
                               const UserHistory& history, const std::string& target_item,
                               const PathEnumerationOptions& opts = {});

} // namespace kgex
