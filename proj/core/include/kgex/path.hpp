#pragma once

#include <cstddef>
#include <vector>

#include "kgex/ids.hpp"

namespace kgex {

/// Hop-depth roles carried through serialization: 1-hop explicit item
/// attributes, 2-hop relational bridges, 3-hop implicit preference signals.
enum class HopRole : std::uint8_t { Explicit = 1, Relational = 2, Implicit = 3 };

const char* hop_role_tag(HopRole role);

/// An alternating entity/relation sequence of 1-3 hops. 1-hop paths start
/// at the target item; 2-3 hop paths start at a history item and end at
/// the target. entities.size() == relations.size() + 1 and consecutive
/// entities are connected in the graph by the stated relation. No entity
/// repeats within a path.
struct ReasoningPath {
    std::vector<EntityId> entities;
    std::vector<RelationId> relations;

    size_t hops() const { return relations.size(); }
    HopRole role() const { return static_cast<HopRole>(hops()); }

    /// The target item's entity: entities.front() for 1-hop paths,
    /// entities.back() otherwise.
    EntityId target() const { return hops() == 1 ? entities.front() : entities.back(); }

    /// Scored node set V(p): every entity on the path except the target.
    std::vector<EntityId> scored_entities() const;

    friend auto operator<=>(const ReasoningPath&, const ReasoningPath&) = default;
};

} // namespace kgex
