#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgex/graph.hpp"
#include "kgex/ids.hpp"

namespace kgex {

/// Ground-truth record for one catalogued item. `features` holds the
/// item's attribute set, already normalized (case-folded, trimmed,
/// deduplicated); it is the reference set for factual checks.
struct ItemRecord {
    std::string item_id;
    EntityId entity;
    std::string title;
    std::set<std::string> features;
};

class ItemCatalog {
public:
    void add(ItemRecord rec);

    bool contains(const std::string& item_id) const;
    const ItemRecord& get(const std::string& item_id) const;

    /// Normalized ground-truth attribute set of an item. Throws
    /// LookupError for unknown items.
    const std::set<std::string>& item_features(const std::string& item_id) const;

    /// Item ids in insertion order.
    const std::vector<std::string>& item_ids() const { return order_; }

    size_t size() const { return items_.size(); }

private:
    std::unordered_map<std::string, ItemRecord> items_;
    std::vector<std::string> order_;
};

/// One phrase-level feature mention extracted from a user's review of an
/// item: (feature, opinion polarity, source sentence, score).
struct FeatureQuad {
    std::string feature;   // normalized
    int polarity = 1;      // +1 or -1
    std::string sentence;
    double score = 0.0;
};

struct HistoryItem {
    std::string item_id;
    std::int64_t timestamp = 0;
    std::vector<FeatureQuad> features;
};

/// A user's interaction history, timestamp-ascending, truncated to the
/// most recent `h_max` items on load.
struct UserHistory {
    std::string user_id;
    std::vector<HistoryItem> items;
};

class UserHistories {
public:
    void add(UserHistory h);
    bool contains(const std::string& user_id) const;
    const UserHistory& get(const std::string& user_id) const;
    const std::vector<std::string>& user_ids() const { return order_; }
    size_t size() const { return users_.size(); }

private:
    std::unordered_map<std::string, UserHistory> users_;
    std::vector<std::string> order_;
};

constexpr size_t kDefaultHistoryMax = 10;

/// JSON-lines: {"item_id": .., "entity": .., "title": .., "features": [..]}.
/// Every item must map to an entity already present in the graph.
ItemCatalog load_catalog(std::istream& in, const KnowledgeGraph& g);
ItemCatalog load_catalog_file(const std::string& path, const KnowledgeGraph& g);

/// JSON-lines: {"user_id": .., "items": [{"item_id": .., "timestamp": ..,
/// "features": [{"feature": .., "polarity": .., "sentence": .., "score": ..}]}]}.
/// Items are sorted timestamp-ascending and only the most recent h_max kept.
UserHistories load_histories(std::istream& in, const ItemCatalog& cat,
                             size_t h_max = kDefaultHistoryMax);
UserHistories load_histories_file(const std::string& path, const ItemCatalog& cat,
                                  size_t h_max = kDefaultHistoryMax);

} // namespace kgex
