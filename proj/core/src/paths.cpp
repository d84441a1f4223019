#include "kgex/paths.hpp"

#include <algorithm>
#include <set>

#include "kgex/error.hpp"

namespace kgex {

const char* hop_role_tag(HopRole role) {
    switch (role) {
        case HopRole::Explicit: return "EXPLICIT";
        case HopRole::Relational: return "RELATIONAL";
        case HopRole::Implicit: return "IMPLICIT";
    }
    return "EXPLICIT";
}

std::vector<EntityId> ReasoningPath::scored_entities() const {
    std::vector<EntityId> out;
    const EntityId t = target();
    for (EntityId e : entities) {
        if (e != t) out.push_back(e);
    }
    return out;
}

PathCandidates enumerate_paths(const KnowledgeGraph& g, const ItemCatalog& cat,
                               const UserHistory& history, const std::string& target_item,
                               const PathEnumerationOptions& opts) {
    if (opts.max_hops < 1 || opts.max_hops > kMaxHopDepth) {
        throw ConfigError("max_hops must be in 1..3");
    }
    const EntityId target = cat.get(target_item).entity;
    if (target.value >= g.entity_count()) {
        throw LookupError("target item entity not in graph: " + target_item);
    }

    std::set<ReasoningPath> unique;

    // 1-hop: target attribute edges.
    for (const AdjEdge& e : g.neighbors(target)) {
        unique.insert(ReasoningPath{{target, e.neighbor}, {e.relation}});
    }

    if (opts.max_hops >= 2) {
        // Distinct history-item entities, skipping any that equal the target.
        std::set<EntityId> anchors;
        for (const auto& hi : history.items) {
            EntityId a = cat.get(hi.item_id).entity;
            if (a != target) anchors.insert(a);
        }

        for (EntityId anchor : anchors) {
            for (const AdjEdge& e1 : g.neighbors(anchor)) {
                const EntityId mid = e1.neighbor;
                if (mid == target || mid == anchor) continue;
                for (const AdjEdge& e2 : g.neighbors(mid)) {
                    if (e2.neighbor == target) {
                        unique.insert(ReasoningPath{{anchor, mid, target},
                                                    {e1.relation, e2.relation}});
                        continue;
                    }
                    if (opts.max_hops < 3) continue;
                    const EntityId mid2 = e2.neighbor;
                    if (mid2 == anchor || mid2 == mid || mid2 == target) continue;
                    for (const AdjEdge& e3 : g.neighbors(mid2)) {
                        if (e3.neighbor != target) continue;
                        unique.insert(ReasoningPath{{anchor, mid, mid2, target},
                                                    {e1.relation, e2.relation, e3.relation}});
                    }
                }
            }
        }
    }

    PathCandidates out;
    out.paths.reserve(unique.size());
    for (const auto& p : unique) out.paths.push_back(p);
    std::sort(out.paths.begin(), out.paths.end(),
              [](const ReasoningPath& a, const ReasoningPath& b) {
                  if (a.hops() != b.hops()) return a.hops() < b.hops();
                  if (a.entities != b.entities) return a.entities < b.entities;
                  return a.relations < b.relations;
              });
    if (out.paths.size() > opts.cap) {
        out.paths.resize(opts.cap);
        out.truncated = true;
    }
    return out;
}

} // namespace kgex
