#pragma once

#include "kgex/graph.hpp"
#include "kgex/intent.hpp"
#include "kgex/kmeans.hpp"

namespace kgex {

/// Component weights for the multi-view node specificity score plus the
/// structural penalty knobs. Weights must be non-negative and sum to 1;
/// epsilon >= 1 keeps the structural component in (0, 1].
struct SpecificityWeights {
    double structural = 0.27;
    double semantic = 0.31;
    double preference = 0.42;
    double alpha_penalty = 1.0;
    double epsilon = 1.0;

    void validate() const;
};

/// exp(-alpha * log(deg + eps)) = (deg + eps)^-alpha, in (0, 1] for eps >= 1.
double specificity_struct(const KnowledgeGraph& g, EntityId v, double alpha_penalty,
                          double epsilon);

/// 1 - H(neighbor cluster distribution) / log K. Neighborless nodes score
/// 1.0 (maximally specific by convention).
double specificity_sem(const KnowledgeGraph& g, const ClusterModel& clusters, EntityId v);

/// (1 + cos(h_v, intent)) / 2 over aggregated vectors.
double specificity_pref(const EmbeddingStore& store, EntityId v, const IntentVector& intent);

/// Everything needed to score nodes for one (user, target) query.
struct SpecificityContext {
    const KnowledgeGraph& graph;
    const EmbeddingStore& store;
    const ClusterModel& clusters;
    const IntentVector& intent;
    SpecificityWeights weights;
    bool disabled = false;   // ablation: every node scores 1
};

struct SpecificityBreakdown {
    double structural = 1.0;
    double semantic = 1.0;
    double preference = 1.0;
    double combined = 1.0;
};

SpecificityBreakdown specificity(const SpecificityContext& ctx, EntityId v);

} // namespace kgex
