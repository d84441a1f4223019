#include "kgex/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

using nlohmann::json;

void ItemCatalog::add(ItemRecord rec) {
    if (items_.count(rec.item_id)) {
        throw ParseError("duplicate item id in catalog: " + rec.item_id);
    }
    order_.push_back(rec.item_id);
    items_.emplace(rec.item_id, std::move(rec));
}

bool ItemCatalog::contains(const std::string& item_id) const {
    return items_.count(item_id) > 0;
}

const ItemRecord& ItemCatalog::get(const std::string& item_id) const {
    auto it = items_.find(item_id);
    if (it == items_.end()) throw LookupError("unknown item: " + item_id);
    return it->second;
}

const std::set<std::string>& ItemCatalog::item_features(const std::string& item_id) const {
    return get(item_id).features;
}

void UserHistories::add(UserHistory h) {
    if (users_.count(h.user_id)) {
        throw ParseError("duplicate user id in histories: " + h.user_id);
    }
    order_.push_back(h.user_id);
    users_.emplace(h.user_id, std::move(h));
}

bool UserHistories::contains(const std::string& user_id) const {
    return users_.count(user_id) > 0;
}

const UserHistory& UserHistories::get(const std::string& user_id) const {
    auto it = users_.find(user_id);
    if (it == users_.end()) throw LookupError("unknown user: " + user_id);
    return it->second;
}

namespace {

json parse_jsonl_line(const std::string& line, size_t line_no, const char* what) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + " line " + std::to_string(line_no) +
                         ": " + e.what());
    }
}

} // namespace

ItemCatalog load_catalog(std::istream& in, const KnowledgeGraph& g) {
    ItemCatalog cat;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json j = parse_jsonl_line(line, line_no, "catalog");
        ItemRecord rec;
        try {
            rec.item_id = j.at("item_id").get<std::string>();
            std::string entity_name = j.at("entity").get<std::string>();
            auto ent = g.find_entity(entity_name);
            if (!ent) {
                throw ParseError("catalog line " + std::to_string(line_no) +
                                 ": entity not in graph: " + entity_name);
            }
            rec.entity = *ent;
            rec.title = j.value("title", rec.item_id);
            for (const auto& f : j.value("features", json::array())) {
                std::string norm = normalize_feature(f.get<std::string>());
                if (!norm.empty()) rec.features.insert(norm);
            }
        } catch (const json::exception& e) {
            throw ParseError("catalog line " + std::to_string(line_no) + ": " + e.what());
        }
        cat.add(std::move(rec));
    }
    return cat;
}

ItemCatalog load_catalog_file(const std::string& path, const KnowledgeGraph& g) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    return load_catalog(in, g);
}

UserHistories load_histories(std::istream& in, const ItemCatalog& cat, size_t h_max) {
    UserHistories out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json j = parse_jsonl_line(line, line_no, "histories");
        UserHistory h;
        try {
            h.user_id = j.at("user_id").get<std::string>();
            for (const auto& ji : j.at("items")) {
                HistoryItem hi;
                hi.item_id = ji.at("item_id").get<std::string>();
                if (!cat.contains(hi.item_id)) {
                    throw ParseError("histories line " + std::to_string(line_no) +
                                     ": item not in catalog: " + hi.item_id);
                }
                hi.timestamp = ji.value("timestamp", std::int64_t{0});
                for (const auto& jf : ji.value("features", json::array())) {
                    FeatureQuad q;
                    q.feature = normalize_feature(jf.at("feature").get<std::string>());
                    q.polarity = jf.value("polarity", 1);
                    if (q.polarity != 1 && q.polarity != -1) {
                        throw ParseError("histories line " + std::to_string(line_no) +
                                         ": polarity must be +1 or -1");
                    }
                    q.sentence = jf.value("sentence", "");
                    q.score = jf.value("score", 1.0);
                    hi.features.push_back(std::move(q));
                }
                h.items.push_back(std::move(hi));
            }
        } catch (const json::exception& e) {
            throw ParseError("histories line " + std::to_string(line_no) + ": " + e.what());
        }
        std::stable_sort(h.items.begin(), h.items.end(),
                         [](const HistoryItem& a, const HistoryItem& b) {
                             return a.timestamp < b.timestamp;
                         });
        if (h.items.size() > h_max) {
            h.items.erase(h.items.begin(),
                          h.items.end() - static_cast<std::ptrdiff_t>(h_max));
        }
        out.add(std::move(h));
    }
    return out;
}

UserHistories load_histories_file(const std::string& path, const ItemCatalog& cat,
                                  size_t h_max) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open histories file: " + path);
    return load_histories(in, cat, h_max);
}

} // namespace kgex
