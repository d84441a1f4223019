#include <cmath>

#include "kgex/embedding.hpp"
#include "kgex/error.hpp"

namespace kgex {

namespace {

// Softmax over raw cosine scores; max-shifted for stability.
std::vector<double> softmax(const std::vector<double>& scores) {
    double mx = scores.front();
    for (double s : scores) mx = std::max(mx, s);
    std::vector<double> out(scores.size());
    double denom = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        out[i] = std::exp(scores[i] - mx);
        denom += out[i];
    }
    for (double& w : out) w /= denom;
    return out;
}

} // namespace

EmbeddingStore aggregate_structure(const KnowledgeGraph& g, const EmbeddingStore& store,
                                   size_t layers) {
    const size_t n = g.entity_count();
    if (store.entity_base_vectors().size() != n) {
        throw Error("embedding store does not cover all graph entities");
    }
    if (store.relation_base_vectors().size() != g.relation_count()) {
        throw Error("embedding store is missing relation vectors");
    }

    // Layer-0 state: normalized base vectors. Relation vectors are
    // normalized once up front; they do not change across layers.
    std::vector<Vec> state;
    state.reserve(n);
    for (const Vec& v : store.entity_base_vectors()) {
        state.push_back(vec::normalized(v));
    }
    std::vector<Vec> rel_hat;
    rel_hat.reserve(g.relation_count());
    for (const Vec& v : store.relation_base_vectors()) {
        rel_hat.push_back(vec::normalized(v));
    }

    for (size_t layer = 0; layer < layers; ++layer) {
        std::vector<Vec> next(n);
        for (std::uint32_t vi = 0; vi < n; ++vi) {
            EntityId v{vi};
            auto edges = g.neighbors(v);
            if (edges.empty()) {
                next[vi] = state[vi];
                continue;
            }
            std::vector<double> scores(edges.size());
            for (size_t i = 0; i < edges.size(); ++i) {
                scores[i] = vec::cosine(state[vi], state[edges[i].neighbor.value]);
            }
            std::vector<double> att = softmax(scores);
            Vec message(store.dim(), 0.0);
            for (size_t i = 0; i < edges.size(); ++i) {
                vec::axpy_inplace(message, att[i], state[edges[i].neighbor.value]);
                vec::axpy_inplace(message, att[i], rel_hat[edges[i].relation.value]);
            }
            Vec updated = state[vi];
            vec::add_inplace(updated, message);
            vec::normalize(updated);
            next[vi] = std::move(updated);
        }
        state = std::move(next);
    }

    EmbeddingStore out = store;
    out.set_aggregated(std::move(state));
    return out;
}

} // namespace kgex
