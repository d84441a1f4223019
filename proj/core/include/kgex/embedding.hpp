#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kgex/graph.hpp"
#include "kgex/vec.hpp"

namespace kgex {

enum class EmbeddingBackend { HashDeterministic, File, HttpEncoder };

const char* backend_tag(EmbeddingBackend b);
EmbeddingBackend backend_from_tag(const std::string& tag);

/// Derives a unit vector from a seeded hash of `name`. Same (name, seed,
/// dim) always yields the same bits, independent of platform or load order.
Vec hash_unit_vector(std::string_view name, std::uint64_t seed, size_t dim);

/// Base vectors for every entity and relation of a graph plus, after
/// aggregation, one structure-aware vector per entity. Immutable once
/// built; aggregation returns a new store.
class EmbeddingStore {
public:
    EmbeddingStore(size_t dim, std::uint64_t seed, EmbeddingBackend backend)
        : dim_(dim), seed_(seed), backend_(backend) {}

    size_t dim() const { return dim_; }
    std::uint64_t seed() const { return seed_; }
    EmbeddingBackend backend() const { return backend_; }

    const Vec& base(EntityId v) const;
    const Vec& base(RelationId r) const;
    const Vec& aggregated(EntityId v) const;
    bool has_aggregated() const { return !entity_agg_.empty(); }

    size_t entity_vector_count() const { return entity_base_.size(); }

    void set_entity_base(std::vector<Vec> vs) { entity_base_ = std::move(vs); }
    void set_relation_base(std::vector<Vec> vs) { relation_base_ = std::move(vs); }
    void set_aggregated(std::vector<Vec> vs) { entity_agg_ = std::move(vs); }

    const std::vector<Vec>& entity_base_vectors() const { return entity_base_; }
    const std::vector<Vec>& relation_base_vectors() const { return relation_base_; }
    const std::vector<Vec>& aggregated_vectors() const { return entity_agg_; }

private:
    size_t dim_;
    std::uint64_t seed_;
    EmbeddingBackend backend_;
    std::vector<Vec> entity_base_;
    std::vector<Vec> relation_base_;
    std::vector<Vec> entity_agg_;
};

constexpr size_t kDefaultEmbeddingDim = 64;

struct EmbeddingInitOptions {
    EmbeddingBackend backend = EmbeddingBackend::HashDeterministic;
    size_t dim = kDefaultEmbeddingDim;   // hash backend; file/http dims come from source
    std::uint64_t seed = 42;
    std::string entity_file;             // file backend
    std::string relation_file;           // file backend; optional, falls back to hash
    std::string encoder_url;             // http backend
};

/// Builds base vectors for every entity and relation of g. The hash
/// backend is fully deterministic; the file backend validates that every
/// name is present and all dimensions agree; the http backend fetches all
/// names once from the encoder endpoint and caches them in the store.
EmbeddingStore init_embeddings(const KnowledgeGraph& g, const EmbeddingInitOptions& opts);

/// Copy with all base vectors (entities and relations) multiplied by c.
/// Aggregated vectors are dropped; re-run aggregation on the copy.
EmbeddingStore scaled_base_copy(const EmbeddingStore& store, double c);

/// Embedding file: header `dim=<d>`, then `name<TAB>v1,v2,...,vd` lines.
/// Mixed dimensions raise ParseError.
std::map<std::string, Vec> load_embedding_file(std::istream& in, size_t& dim_out);
std::map<std::string, Vec> load_embedding_file(const std::string& path, size_t& dim_out);

/// Runs `layers` rounds of relational attention aggregation and returns a
/// store whose aggregated vectors are filled in.
///
/// Layer update, applied synchronously from the layer-k snapshot:
///   a(v,u)    = softmax over N(v) of cos(h_v, h_u)
///   m_v       = sum over (r,u) in N(v) of a(v,u) * (h_u + r_hat)
///   h_v(next) = normalize(h_v + m_v)
/// where h_v(0) is the normalized base vector and r_hat the normalized
/// relation vector. Nodes without neighbors keep their state. layers = 0
/// therefore yields the normalized base vectors.
EmbeddingStore aggregate_structure(const KnowledgeGraph& g, const EmbeddingStore& store,
                                   size_t layers = 3);

} // namespace kgex
