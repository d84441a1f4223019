#include "kgex/mmr.hpp"

#include <limits>

#include "kgex/error.hpp"

namespace kgex {

std::vector<size_t> mmr_select(std::span<const MmrCandidate> candidates, double gamma,
                               size_t n) {
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("mmr gamma must be in [0, 1]");
    if (n < 1) throw ConfigError("mmr selection count must be >= 1");

    const size_t total = candidates.size();
    std::vector<size_t> selected;
    if (total == 0) return selected;
    selected.reserve(std::min(n, total));

    std::vector<bool> taken(total, false);
    // Max cosine to anything selected so far, updated incrementally.
    std::vector<double> max_sim(total, 0.0);

    while (selected.size() < std::min(n, total)) {
        size_t best = total;
        double best_value = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < total; ++i) {
            if (taken[i]) continue;
            double penalty = selected.empty() ? 0.0 : (1.0 - gamma) * max_sim[i];
            double value = gamma * candidates[i].score - penalty;
            if (value > best_value) {
                best_value = value;
                best = i;
            }
        }
        taken[best] = true;
        selected.push_back(best);
        for (size_t i = 0; i < total; ++i) {
            if (taken[i]) continue;
            double sim = vec::cosine(candidates[i].encoding, candidates[best].encoding);
            if (sim > max_sim[i]) max_sim[i] = sim;
        }
    }
    return selected;
}

} // namespace kgex
