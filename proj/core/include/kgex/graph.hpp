#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgex/ids.hpp"

namespace kgex {

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// One incident edge as seen from a node. For an outgoing edge `neighbor`
/// is the tail, for an incoming edge it is the head.
struct AdjEdge {
    RelationId relation;
    EntityId neighbor;
    Direction direction;

    friend auto operator<=>(const AdjEdge&, const AdjEdge&) = default;
};

/// Immutable after load. Entities and relations are interned to dense ids;
/// adjacency includes both edge directions and is sorted by (relation,
/// neighbor, direction) so every traversal is deterministic.
class KnowledgeGraph {
public:
    EntityId intern_entity(std::string_view name);
    RelationId intern_relation(std::string_view name);

    std::optional<EntityId> find_entity(std::string_view name) const;
    std::optional<RelationId> find_relation(std::string_view name) const;

    const std::string& entity_name(EntityId id) const;
    const std::string& relation_name(RelationId id) const;

    /// Adds a triple unless it is a self-loop (ignored with a count) or a
    /// duplicate (deduplicated). Returns true if the triple was new.
    bool add_triple(EntityId head, RelationId relation, EntityId tail);

    /// Sorts triples and builds adjacency/degree tables. Must be called
    /// once after the last add_triple; load_graph does this for you.
    void finalize();

    size_t entity_count() const { return entity_names_.size(); }
    size_t relation_count() const { return relation_names_.size(); }
    size_t triple_count() const { return triples_.size(); }
    size_t self_loops_dropped() const { return self_loops_dropped_; }

    std::span<const Triple> triples() const { return triples_; }

    /// All incident edges of v in deterministic order. Throws LookupError
    /// for out-of-range ids.
    std::span<const AdjEdge> neighbors(EntityId v) const;

    /// Total incidence count (both directions); equals neighbors(v).size().
    size_t degree(EntityId v) const;

    bool finalized() const { return finalized_; }

private:
    void check_entity(EntityId v) const;

    std::vector<std::string> entity_names_;
    std::vector<std::string> relation_names_;
    std::unordered_map<std::string, EntityId> entity_by_name_;
    std::unordered_map<std::string, RelationId> relation_by_name_;
    std::vector<Triple> triples_;
    std::vector<std::vector<AdjEdge>> adjacency_;
    size_t self_loops_dropped_ = 0;
    bool finalized_ = false;
};

/// Parses tab-separated `head<TAB>relation<TAB>tail` lines. Empty lines and
/// `#`-prefixed comment lines are skipped. Malformed lines raise ParseError
/// with the 1-based line number; an input with zero triples raises ParseError.
KnowledgeGraph load_graph(std::istream& in);
KnowledgeGraph load_graph_file(const std::string& path);

} // namespace kgex
