#pragma once

#include <vector>

#include "kgex/encoder.hpp"
#include "kgex/path.hpp"
#include "kgex/specificity.hpp"

namespace kgex {

struct NodeSpecificity {
    EntityId entity;
    SpecificityBreakdown terms;
};

/// Joint path score: relevance (cosine of intent and path encoding) times
/// the mean node specificity over V(p).
struct PathScore {
    double relevance = 0.0;
    double mean_specificity = 1.0;
    double final_score = 0.0;
    std::vector<NodeSpecificity> nodes;
};

PathScore score_path(const EmbeddingStore& store, const IntentVector& intent,
                     const ReasoningPath& path, const SpecificityContext& ctx);

} // namespace kgex
