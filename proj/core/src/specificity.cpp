#include "kgex/specificity.hpp"

#include <cmath>

#include "kgex/error.hpp"

namespace kgex {

void SpecificityWeights::validate() const {
    if (structural < 0.0 || semantic < 0.0 || preference < 0.0) {
        throw ConfigError("specificity weights must be non-negative");
    }
    if (std::abs(structural + semantic + preference - 1.0) > 1e-9) {
        throw ConfigError("specificity weights must sum to 1");
    }
    if (epsilon < 1.0) {
        throw ConfigError("specificity epsilon must be >= 1");
    }
    if (alpha_penalty < 0.0) {
        throw ConfigError("specificity alpha penalty must be non-negative");
    }
}

double specificity_struct(const KnowledgeGraph& g, EntityId v, double alpha_penalty,
                          double epsilon) {
    const double deg = static_cast<double>(g.degree(v));
    return std::exp(-alpha_penalty * std::log(deg + epsilon));
}

double specificity_sem(const KnowledgeGraph& g, const ClusterModel& clusters, EntityId v) {
    auto edges = g.neighbors(v);
    if (edges.empty()) return 1.0;
    const size_t k = clusters.cluster_count();

    std::vector<size_t> counts(k, 0);
    for (const AdjEdge& e : edges) ++counts[clusters.cluster_of(e.neighbor)];

    double entropy = 0.0;
    const double total = static_cast<double>(edges.size());
    for (size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        double p = static_cast<double>(counts[c]) / total;
        entropy -= p * std::log(p);
    }
    double score = 1.0 - entropy / std::log(static_cast<double>(k));
    if (score < 0.0) score = 0.0;   // guard FP rounding at the uniform limit
    if (score > 1.0) score = 1.0;
    return score;
}

double specificity_pref(const EmbeddingStore& store, EntityId v, const IntentVector& intent) {
    return 0.5 * (1.0 + vec::cosine(store.aggregated(v), intent.vector));
}

SpecificityBreakdown specificity(const SpecificityContext& ctx, EntityId v) {
    if (ctx.disabled) return SpecificityBreakdown{};
    SpecificityBreakdown b;
    b.structural = specificity_struct(ctx.graph, v, ctx.weights.alpha_penalty,
                                      ctx.weights.epsilon);
    b.semantic = specificity_sem(ctx.graph, ctx.clusters, v);
    b.preference = specificity_pref(ctx.store, v, ctx.intent);
    b.combined = ctx.weights.structural * b.structural +
                 ctx.weights.semantic * b.semantic +
                 ctx.weights.preference * b.preference;
    return b;
}

} // namespace kgex
