#include "kgex/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

EntityId KnowledgeGraph::intern_entity(std::string_view name) {
    auto it = entity_by_name_.find(std::string(name));
    if (it != entity_by_name_.end()) return it->second;
    EntityId id{static_cast<std::uint32_t>(entity_names_.size())};
    entity_names_.emplace_back(name);
    entity_by_name_.emplace(entity_names_.back(), id);
    return id;
}

RelationId KnowledgeGraph::intern_relation(std::string_view name) {
    auto it = relation_by_name_.find(std::string(name));
    if (it != relation_by_name_.end()) return it->second;
    RelationId id{static_cast<std::uint32_t>(relation_names_.size())};
    relation_names_.emplace_back(name);
    relation_by_name_.emplace(relation_names_.back(), id);
    return id;
}

std::optional<EntityId> KnowledgeGraph::find_entity(std::string_view name) const {
    auto it = entity_by_name_.find(std::string(name));
    if (it == entity_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view name) const {
    auto it = relation_by_name_.find(std::string(name));
    if (it == relation_by_name_.end()) return std::nullopt;
    return it->second;
}

const std::string& KnowledgeGraph::entity_name(EntityId id) const {
    check_entity(id);
    return entity_names_[id.value];
}

const std::string& KnowledgeGraph::relation_name(RelationId id) const {
    if (id.value >= relation_names_.size()) {
        throw LookupError("unknown relation id " + std::to_string(id.value));
    }
    return relation_names_[id.value];
}

bool KnowledgeGraph::add_triple(EntityId head, RelationId relation, EntityId tail) {
    if (head == tail) {
        ++self_loops_dropped_;
        return false;
    }
    triples_.push_back(Triple{head, relation, tail});
    finalized_ = false;
    return true;
}

void KnowledgeGraph::finalize() {
    std::sort(triples_.begin(), triples_.end());
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());

    adjacency_.assign(entity_names_.size(), {});
    for (const Triple& t : triples_) {
        adjacency_[t.head.value].push_back(AdjEdge{t.relation, t.tail, Direction::Outgoing});
        adjacency_[t.tail.value].push_back(AdjEdge{t.relation, t.head, Direction::Incoming});
    }
    for (auto& edges : adjacency_) {
        std::sort(edges.begin(), edges.end());
    }
    finalized_ = true;
}

std::span<const AdjEdge> KnowledgeGraph::neighbors(EntityId v) const {
    check_entity(v);
    if (!finalized_) throw Error("graph not finalized");
    return adjacency_[v.value];
}

size_t KnowledgeGraph::degree(EntityId v) const {
    return neighbors(v).size();
}

void KnowledgeGraph::check_entity(EntityId v) const {
    if (v.value >= entity_names_.size()) {
        throw LookupError("unknown entity id " + std::to_string(v.value));
    }
}

KnowledgeGraph load_graph(std::istream& in) {
    KnowledgeGraph g;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;

        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw ParseError("triples line " + std::to_string(line_no) +
                             ": expected 3 tab-separated fields");
        }
        std::string_view head = trim(std::string_view(line).substr(0, t1));
        std::string_view rel = trim(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
        std::string_view tail = trim(std::string_view(line).substr(t2 + 1));
        if (line.find('\t', t2 + 1) != std::string::npos) {
            throw ParseError("triples line " + std::to_string(line_no) +
                             ": expected 3 tab-separated fields, got more");
        }
        if (head.empty() || rel.empty() || tail.empty()) {
            throw ParseError("triples line " + std::to_string(line_no) +
                             ": empty field");
        }
        g.add_triple(g.intern_entity(head), g.intern_relation(rel), g.intern_entity(tail));
    }
    if (g.triple_count() == 0) {
        throw ParseError("triples input contains no triples");
    }
    g.finalize();
    return g;
}

KnowledgeGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open triples file: " + path);
    return load_graph(in);
}

} // namespace kgex
