#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgex/catalog.hpp"
#include "kgex/embedding.hpp"
#include "kgex/vec.hpp"

namespace kgex {

constexpr double kDefaultIntentTemperature = 0.1;

/// Target-aware user intent: attention over history items with the target
/// as query. weights align 1:1 with history order, are non-negative and
/// sum to 1.
struct IntentVector {
    std::string user_id;
    std::string target_item_id;
    Vec vector;
    std::vector<double> weights;
};

/// Attention weights are softmax over history of cos(h_target, h_hist)/T
/// using aggregated vectors; the intent vector is the weighted sum of
/// (optionally W_V-projected) history vectors. value_projection, when
/// given, must be a dim x dim row-major matrix; identity otherwise.
IntentVector compute_intent(const EmbeddingStore& store, const ItemCatalog& cat,
                            const UserHistory& history, const std::string& target_item,
                            double temperature = kDefaultIntentTemperature,
                            const std::optional<std::vector<Vec>>& value_projection = std::nullopt);

} // namespace kgex
