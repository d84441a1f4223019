#pragma once

#include <cstdint>
#include <functional>

namespace kgex {

/// Dense handle for an interned entity name. Valid handles are 0..N-1.
struct EntityId {
    std::uint32_t value = 0;

    friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

/// Dense handle for an interned relation name.
struct RelationId {
    std::uint32_t value = 0;

    friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

/// Whether an adjacency edge leaves the queried node or points into it.
enum class Direction : std::uint8_t { Outgoing = 0, Incoming = 1 };

} // namespace kgex

template <>
struct std::hash<kgex::EntityId> {
    size_t operator()(const kgex::EntityId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};

template <>
struct std::hash<kgex::RelationId> {
    size_t operator()(const kgex::RelationId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
