#include "kgex/intent.hpp"

#include <cmath>

#include "kgex/error.hpp"

namespace kgex {

namespace {

Vec project(const std::optional<std::vector<Vec>>& w, const Vec& v) {
    if (!w) return v;
    const auto& m = *w;
    if (m.size() != v.size()) throw ConfigError("value projection must be dim x dim");
    Vec out(v.size(), 0.0);
    for (size_t r = 0; r < m.size(); ++r) {
        if (m[r].size() != v.size()) throw ConfigError("value projection must be dim x dim");
        out[r] = vec::dot(m[r], v);
    }
    return out;
}

} // namespace

IntentVector compute_intent(const EmbeddingStore& store, const ItemCatalog& cat,
                            const UserHistory& history, const std::string& target_item,
                            double temperature,
                            const std::optional<std::vector<Vec>>& value_projection) {
    if (history.items.empty()) {
        throw Error("cannot compute intent for an empty history");
    }
    if (temperature <= 0.0) throw ConfigError("intent temperature must be positive");

    const Vec& target_vec = store.aggregated(cat.get(target_item).entity);

    std::vector<double> scores;
    scores.reserve(history.items.size());
    for (const auto& hi : history.items) {
        const Vec& hv = store.aggregated(cat.get(hi.item_id).entity);
        scores.push_back(vec::cosine(target_vec, hv) / temperature);
    }

    double mx = scores.front();
    for (double s : scores) mx = std::max(mx, s);
    std::vector<double> weights(scores.size());
    double denom = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        weights[i] = std::exp(scores[i] - mx);
        denom += weights[i];
    }
    for (double& w : weights) w /= denom;

    Vec intent(store.dim(), 0.0);
    for (size_t i = 0; i < history.items.size(); ++i) {
        const Vec& hv = store.aggregated(cat.get(history.items[i].item_id).entity);
        vec::axpy_inplace(intent, weights[i], project(value_projection, hv));
    }

    return IntentVector{history.user_id, target_item, std::move(intent), std::move(weights)};
}

} // namespace kgex
