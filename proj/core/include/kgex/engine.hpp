#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "kgex/catalog.hpp"
#include "kgex/config.hpp"
#include "kgex/generate.hpp"
#include "kgex/graph.hpp"
#include "kgex/intent.hpp"
#include "kgex/kmeans.hpp"
#include "kgex/metrics.hpp"
#include "kgex/mmr.hpp"
#include "kgex/prompt.hpp"
#include "kgex/scoring.hpp"

namespace kgex {

struct RankedPath {
    ReasoningPath path;
    PathScore score;
    Vec encoding;
};

struct RetrievalResult {
    std::string user_id;
    std::string target_item_id;
    IntentVector intent;
    std::vector<RankedPath> selected;   // selection order
    size_t candidate_count = 0;
    bool truncated = false;
};

struct ExplainResult {
    RetrievalResult retrieval;
    PromptBundle bundle;
    GenerationResponse response;
};

/// Ties the whole pipeline together over immutable loaded state. Build
/// once (or load a saved index), then retrieve/explain/evaluate are
/// const and thread-safe.
class Engine {
public:
    /// Loads data files, initializes embeddings, runs aggregation and
    /// clustering. This is the expensive indexing step.
    static Engine build(const EngineConfig& config);

    /// Restores a previously saved index; catalog and histories are
    /// re-read from their data files.
    static Engine load(const EngineConfig& config);

    void save_index() const;

    RetrievalResult retrieve(const std::string& user_id, const std::string& target_item) const;

    PromptBundle build_prompt(const std::string& user_id, const std::string& target_item,
                              const RetrievalResult* retrieval) const;

    ExplainResult explain(const std::string& user_id, const std::string& target_item,
                          const GenerationBackend& backend) const;

    /// Union of catalog attribute names and history feature names; the
    /// extraction lexicon for evaluation.
    std::set<std::string> feature_vocabulary() const;

    EvalReport evaluate(const std::vector<EvalInstanceSource>& sources,
                        const EvalOptions& options) const;

    std::unique_ptr<TextEncoder> text_encoder() const;

    const EngineConfig& config() const { return config_; }
    const KnowledgeGraph& graph() const { return graph_; }
    const ItemCatalog& catalog() const { return catalog_; }
    const UserHistories& histories() const { return histories_; }
    const EmbeddingStore& store() const { return store_; }
    const ClusterModel& clusters() const { return clusters_; }

    /// Test hook: rebuilds an engine around an externally transformed
    /// store (e.g. rescaled base vectors), re-running aggregation and
    /// clustering exactly as build() does.
    static Engine rebuild_with_store(const Engine& prototype, const EmbeddingStore& base_store);

private:
    Engine(EngineConfig config, KnowledgeGraph graph, ItemCatalog catalog,
           UserHistories histories, EmbeddingStore store, ClusterModel clusters);

    EngineConfig config_;
    KnowledgeGraph graph_;
    ItemCatalog catalog_;
    UserHistories histories_;
    EmbeddingStore store_;
    ClusterModel clusters_;
};

} // namespace kgex
