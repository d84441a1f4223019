#pragma once

#include <cstdint>
#include <string>

#include "kgex/catalog.hpp"
#include "kgex/embedding.hpp"
#include "kgex/generate.hpp"
#include "kgex/mmr.hpp"
#include "kgex/paths.hpp"
#include "kgex/profile.hpp"
#include "kgex/specificity.hpp"

namespace kgex {

/// Engine switches mirroring the retrieval/generation ablation variants.
struct AblationFlags {
    bool no_kg = false;        // generate without any evidence block
    bool no_pruning = false;   // score = relevance only, selection = plain top-N
    bool no_spec = false;      // every node specificity := 1
    bool no_mmr = false;       // gamma := 1 (diversity term off)
    bool only_1hop = false;    // max_hops := 1
};

struct EngineConfig {
    // Data inputs.
    std::string triples_path;
    std::string catalog_path;
    std::string histories_path;
    std::string index_dir = "index";

    // Embeddings and aggregation.
    std::string embedding_backend = "hash";
    size_t embedding_dim = kDefaultEmbeddingDim;
    std::uint64_t seed = 42;
    size_t aggregation_layers = 3;
    std::string entity_embedding_file;
    std::string relation_embedding_file;
    std::string encoder_url;   // also via KGEX_ENCODER_URL

    // Clustering.
    size_t cluster_count = kDefaultClusterCount;

    // Retrieval.
    SpecificityWeights specificity;
    double intent_temperature = 0.1;
    double gamma = kDefaultMmrGamma;
    size_t top_paths = kDefaultSelectionCount;
    size_t max_hops = kMaxHopDepth;
    size_t candidate_cap = kDefaultCandidateCap;
    size_t history_max = kDefaultHistoryMax;

    // Evaluation.
    double tau = kDefaultProxyThreshold;

    // Generation.
    std::string generation_backend = "stub";
    std::string completion_url;   // also via KGEX_COMPLETION_URL
    std::string auth_token;       // also via KGEX_AUTH_TOKEN
    int backend_timeout_seconds = 30;
    DecodingParams decoding;

    AblationFlags ablations;
    size_t jobs = 0;   // 0 = available cores

    /// Rejects every invariant violation up front, before any work runs.
    void validate() const;

    /// Stable hash of the canonical JSON form, used to name run directories.
    std::string hash() const;

    /// Effective hop depth / gamma / specificity after ablation flags.
    size_t effective_max_hops() const { return ablations.only_1hop ? 1 : max_hops; }
    double effective_gamma() const {
        return (ablations.no_mmr || ablations.no_pruning) ? 1.0 : gamma;
    }
};

/// Reads a JSON config file; unknown keys are rejected. Environment
/// variables KGEX_ENCODER_URL / KGEX_COMPLETION_URL / KGEX_AUTH_TOKEN fill
/// the corresponding fields when the file leaves them empty.
EngineConfig load_config_file(const std::string& path);
EngineConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const EngineConfig& config);

} // namespace kgex
