#include "kgex/scoring.hpp"

#include "kgex/error.hpp"

namespace kgex {

PathScore score_path(const EmbeddingStore& store, const IntentVector& intent,
                     const ReasoningPath& path, const SpecificityContext& ctx) {
    PathScore score;
    score.relevance = vec::cosine(intent.vector, encode_path(store, path));

    const auto scored = path.scored_entities();
    if (scored.empty()) throw Error("path has no scoreable entities");
    double sum = 0.0;
    score.nodes.reserve(scored.size());
    for (EntityId v : scored) {
        SpecificityBreakdown b = specificity(ctx, v);
        sum += b.combined;
        score.nodes.push_back(NodeSpecificity{v, b});
    }
    score.mean_specificity = sum / static_cast<double>(scored.size());
    score.final_score = score.relevance * score.mean_specificity;
    return score;
}

} // namespace kgex
