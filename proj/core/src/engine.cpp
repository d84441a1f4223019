#include "kgex/engine.hpp"

#include "kgex/error.hpp"
#include "kgex/index_io.hpp"
#include "kgex/parallel.hpp"
#include "kgex/paths.hpp"
#include "kgex/text.hpp"

namespace kgex {

Engine::Engine(EngineConfig config, KnowledgeGraph graph, ItemCatalog catalog,
               UserHistories histories, EmbeddingStore store, ClusterModel clusters)
    : config_(std::move(config)),
      graph_(std::move(graph)),
      catalog_(std::move(catalog)),
      histories_(std::move(histories)),
      store_(std::move(store)),
      clusters_(std::move(clusters)) {}

Engine Engine::build(const EngineConfig& config) {
    config.validate();
    KnowledgeGraph graph = load_graph_file(config.triples_path);
    ItemCatalog catalog = load_catalog_file(config.catalog_path, graph);
    UserHistories histories =
        load_histories_file(config.histories_path, catalog, config.history_max);

    EmbeddingInitOptions opts;
    opts.backend = backend_from_tag(config.embedding_backend);
    opts.dim = config.embedding_dim;
    opts.seed = config.seed;
    opts.entity_file = config.entity_embedding_file;
    opts.relation_file = config.relation_embedding_file;
    opts.encoder_url = config.encoder_url;

    EmbeddingStore store = init_embeddings(graph, opts);
    store = aggregate_structure(graph, store, config.aggregation_layers);
    ClusterModel clusters = kmeans_fit(store, config.cluster_count, config.seed);

    return Engine(config, std::move(graph), std::move(catalog), std::move(histories),
                  std::move(store), std::move(clusters));
}

Engine Engine::load(const EngineConfig& config) {
    config.validate();
    LoadedIndex idx = load_index(config.index_dir);
    ItemCatalog catalog = load_catalog_file(config.catalog_path, idx.graph);
    UserHistories histories =
        load_histories_file(config.histories_path, catalog, config.history_max);
    return Engine(config, std::move(idx.graph), std::move(catalog), std::move(histories),
                  std::move(idx.store), std::move(idx.clusters));
}

Engine Engine::rebuild_with_store(const Engine& prototype, const EmbeddingStore& base_store) {
    EmbeddingStore store =
        aggregate_structure(prototype.graph_, base_store, prototype.config_.aggregation_layers);
    ClusterModel clusters =
        kmeans_fit(store, prototype.config_.cluster_count, prototype.config_.seed);
    return Engine(prototype.config_, prototype.graph_, prototype.catalog_,
                  prototype.histories_, std::move(store), std::move(clusters));
}

void Engine::save_index() const {
    kgex::save_index(config_.index_dir, graph_, store_, clusters_, config_);
}

RetrievalResult Engine::retrieve(const std::string& user_id,
                                 const std::string& target_item) const {
    const UserHistory& history = histories_.get(user_id);
    if (!catalog_.contains(target_item)) throw LookupError("unknown item: " + target_item);

    PathEnumerationOptions popts;
    popts.max_hops = config_.effective_max_hops();
    popts.cap = config_.candidate_cap;
    PathCandidates candidates =
        enumerate_paths(graph_, catalog_, history, target_item, popts);

    RetrievalResult result;
    result.user_id = user_id;
    result.target_item_id = target_item;
    result.candidate_count = candidates.paths.size();
    result.truncated = candidates.truncated;
    result.intent = compute_intent(store_, catalog_, history, target_item,
                                   config_.intent_temperature);

    if (candidates.paths.empty()) return result;

    SpecificityContext ctx{graph_, store_, clusters_, result.intent, config_.specificity,
                           config_.ablations.no_spec || config_.ablations.no_pruning};

    std::vector<RankedPath> scored(candidates.paths.size());
    parallel_for(candidates.paths.size(), config_.jobs, [&](size_t i) {
        RankedPath rp;
        rp.path = candidates.paths[i];
        rp.score = score_path(store_, result.intent, rp.path, ctx);
        if (config_.ablations.no_pruning) {
            // Raw relevance ranking: no specificity weighting at all.
            rp.score.final_score = rp.score.relevance;
        }
        rp.encoding = encode_path(store_, rp.path);
        scored[i] = std::move(rp);
    });

    std::vector<MmrCandidate> mmr_input;
    mmr_input.reserve(scored.size());
    for (const auto& rp : scored) {
        mmr_input.push_back(MmrCandidate{rp.score.final_score, rp.encoding});
    }
    std::vector<size_t> picks =
        mmr_select(mmr_input, config_.effective_gamma(), config_.top_paths);
    result.selected.reserve(picks.size());
    for (size_t p : picks) result.selected.push_back(scored[p]);
    return result;
}

PromptBundle Engine::build_prompt(const std::string& user_id, const std::string& target_item,
                                  const RetrievalResult* retrieval) const {
    const UserHistory& history = histories_.get(user_id);
    std::string evidence;
    if (retrieval != nullptr) {
        std::vector<ReasoningPath> paths;
        paths.reserve(retrieval->selected.size());
        for (const auto& rp : retrieval->selected) paths.push_back(rp.path);
        evidence = serialize_paths(paths, graph_);
    }
    return assemble_prompt(default_system_instruction(),
                           format_history_text(history, catalog_),
                           format_target_text(target_item, catalog_), std::move(evidence));
}

ExplainResult Engine::explain(const std::string& user_id, const std::string& target_item,
                              const GenerationBackend& backend) const {
    ExplainResult out;
    if (config_.ablations.no_kg) {
        out.retrieval.user_id = user_id;
        out.retrieval.target_item_id = target_item;
        out.retrieval.intent = compute_intent(store_, catalog_, histories_.get(user_id),
                                              target_item, config_.intent_temperature);
        out.bundle = build_prompt(user_id, target_item, nullptr);
    } else {
        out.retrieval = retrieve(user_id, target_item);
        out.bundle = build_prompt(user_id, target_item, &out.retrieval);
    }
    GenerationRequest req;
    req.prompt = out.bundle.text();
    req.decoding = config_.decoding;
    out.response = backend.generate(req);
    if (trim(out.response.text).empty()) {
        throw BackendError("generation backend returned empty text");
    }
    return out;
}

std::set<std::string> Engine::feature_vocabulary() const {
    std::set<std::string> vocab;
    for (const auto& item_id : catalog_.item_ids()) {
        const auto& fs = catalog_.get(item_id).features;
        vocab.insert(fs.begin(), fs.end());
    }
    for (const auto& user_id : histories_.user_ids()) {
        for (const auto& item : histories_.get(user_id).items) {
            for (const auto& quad : item.features) vocab.insert(quad.feature);
        }
    }
    return vocab;
}

EvalReport Engine::evaluate(const std::vector<EvalInstanceSource>& sources,
                            const EvalOptions& options) const {
    auto encoder = text_encoder();
    return evaluate_corpus(sources, catalog_, histories_, *encoder, feature_vocabulary(),
                           options);
}

std::unique_ptr<TextEncoder> Engine::text_encoder() const {
    return make_text_encoder(store_, config_.encoder_url);
}

} // namespace kgex
