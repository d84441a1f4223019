#include "kgex/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgex/error.hpp"

namespace kgex {

using nlohmann::json;

void EngineConfig::validate() const {
    specificity.validate();
    backend_from_tag(embedding_backend);
    if (embedding_dim < 2) throw ConfigError("embedding_dim must be >= 2");
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma must be in [0, 1]");
    if (top_paths < 1) throw ConfigError("top_paths must be >= 1");
    if (max_hops < 1 || max_hops > kMaxHopDepth) throw ConfigError("max_hops must be in 1..3");
    if (candidate_cap < 1) throw ConfigError("candidate_cap must be >= 1");
    if (tau < 0.0 || tau > 1.0) throw ConfigError("tau must be in [0, 1]");
    if (intent_temperature <= 0.0) throw ConfigError("intent_temperature must be positive");
    if (cluster_count < 2) throw ConfigError("cluster_count must be >= 2");
    if (history_max < 1) throw ConfigError("history_max must be >= 1");
    if (backend_timeout_seconds < 1) throw ConfigError("backend_timeout_seconds must be >= 1");
    if (generation_backend != "stub" && generation_backend != "http") {
        throw ConfigError("generation_backend must be 'stub' or 'http'");
    }
    if (decoding.max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
    if (decoding.temperature < 0.0) throw ConfigError("temperature must be >= 0");
}

namespace {

json to_json(const EngineConfig& c) {
    json j;
    j["triples"] = c.triples_path;
    j["catalog"] = c.catalog_path;
    j["histories"] = c.histories_path;
    j["index_dir"] = c.index_dir;
    j["embedding"] = {{"backend", c.embedding_backend},
                      {"dim", c.embedding_dim},
                      {"seed", c.seed},
                      {"layers", c.aggregation_layers},
                      {"entity_file", c.entity_embedding_file},
                      {"relation_file", c.relation_embedding_file},
                      {"encoder_url", c.encoder_url}};
    j["clusters"] = c.cluster_count;
    j["retrieval"] = {{"lambda_struct", c.specificity.structural},
                      {"lambda_sem", c.specificity.semantic},
                      {"lambda_pref", c.specificity.preference},
                      {"alpha_penalty", c.specificity.alpha_penalty},
                      {"epsilon", c.specificity.epsilon},
                      {"intent_temperature", c.intent_temperature},
                      {"gamma", c.gamma},
                      {"top_paths", c.top_paths},
                      {"max_hops", c.max_hops},
                      {"candidate_cap", c.candidate_cap},
                      {"history_max", c.history_max}};
    j["eval"] = {{"tau", c.tau}};
    j["generation"] = {{"backend", c.generation_backend},
                       {"completion_url", c.completion_url},
                       {"timeout_seconds", c.backend_timeout_seconds},
                       {"max_tokens", c.decoding.max_tokens},
                       {"temperature", c.decoding.temperature},
                       {"seed", c.decoding.seed}};
    j["ablations"] = {{"no_kg", c.ablations.no_kg},
                      {"no_pruning", c.ablations.no_pruning},
                      {"no_spec", c.ablations.no_spec},
                      {"no_mmr", c.ablations.no_mmr},
                      {"only_1hop", c.ablations.only_1hop}};
    j["jobs"] = c.jobs;
    return j;
}

void require_known_keys(const json& j, std::initializer_list<const char*> known,
                        const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v == nullptr ? fallback : std::string(v);
}

} // namespace

EngineConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_known_keys(j,
                       {"triples", "catalog", "histories", "index_dir", "embedding", "clusters",
                        "retrieval", "eval", "generation", "ablations", "jobs"},
                       "top level");

    EngineConfig c;
    try {
        c.triples_path = j.value("triples", c.triples_path);
        c.catalog_path = j.value("catalog", c.catalog_path);
        c.histories_path = j.value("histories", c.histories_path);
        c.index_dir = j.value("index_dir", c.index_dir);
        if (j.contains("embedding")) {
            const auto& e = j["embedding"];
            require_known_keys(e, {"backend", "dim", "seed", "layers", "entity_file",
                                   "relation_file", "encoder_url"},
                               "embedding");
            c.embedding_backend = e.value("backend", c.embedding_backend);
            c.embedding_dim = e.value("dim", c.embedding_dim);
            c.seed = e.value("seed", c.seed);
            c.aggregation_layers = e.value("layers", c.aggregation_layers);
            c.entity_embedding_file = e.value("entity_file", c.entity_embedding_file);
            c.relation_embedding_file = e.value("relation_file", c.relation_embedding_file);
            c.encoder_url = e.value("encoder_url", c.encoder_url);
        }
        c.cluster_count = j.value("clusters", c.cluster_count);
        if (j.contains("retrieval")) {
            const auto& r = j["retrieval"];
            require_known_keys(r,
                               {"lambda_struct", "lambda_sem", "lambda_pref", "alpha_penalty",
                                "epsilon", "intent_temperature", "gamma", "top_paths",
                                "max_hops", "candidate_cap", "history_max"},
                               "retrieval");
            c.specificity.structural = r.value("lambda_struct", c.specificity.structural);
            c.specificity.semantic = r.value("lambda_sem", c.specificity.semantic);
            c.specificity.preference = r.value("lambda_pref", c.specificity.preference);
            c.specificity.alpha_penalty = r.value("alpha_penalty", c.specificity.alpha_penalty);
            c.specificity.epsilon = r.value("epsilon", c.specificity.epsilon);
            c.intent_temperature = r.value("intent_temperature", c.intent_temperature);
            c.gamma = r.value("gamma", c.gamma);
            c.top_paths = r.value("top_paths", c.top_paths);
            c.max_hops = r.value("max_hops", c.max_hops);
            c.candidate_cap = r.value("candidate_cap", c.candidate_cap);
            c.history_max = r.value("history_max", c.history_max);
        }
        if (j.contains("eval")) {
            require_known_keys(j["eval"], {"tau"}, "eval");
            c.tau = j["eval"].value("tau", c.tau);
        }
        if (j.contains("generation")) {
            const auto& g = j["generation"];
            require_known_keys(g, {"backend", "completion_url", "timeout_seconds", "max_tokens",
                                   "temperature", "seed"},
                               "generation");
            c.generation_backend = g.value("backend", c.generation_backend);
            c.completion_url = g.value("completion_url", c.completion_url);
            c.backend_timeout_seconds = g.value("timeout_seconds", c.backend_timeout_seconds);
            c.decoding.max_tokens = g.value("max_tokens", c.decoding.max_tokens);
            c.decoding.temperature = g.value("temperature", c.decoding.temperature);
            c.decoding.seed = g.value("seed", c.decoding.seed);
        }
        if (j.contains("ablations")) {
            const auto& a = j["ablations"];
            require_known_keys(a, {"no_kg", "no_pruning", "no_spec", "no_mmr", "only_1hop"},
                               "ablations");
            c.ablations.no_kg = a.value("no_kg", false);
            c.ablations.no_pruning = a.value("no_pruning", false);
            c.ablations.no_spec = a.value("no_spec", false);
            c.ablations.no_mmr = a.value("no_mmr", false);
            c.ablations.only_1hop = a.value("only_1hop", false);
        }
        c.jobs = j.value("jobs", c.jobs);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }

    if (c.encoder_url.empty()) c.encoder_url = env_or("KGEX_ENCODER_URL", "");
    if (c.completion_url.empty()) c.completion_url = env_or("KGEX_COMPLETION_URL", "");
    if (c.auth_token.empty()) c.auth_token = env_or("KGEX_AUTH_TOKEN", "");

    c.validate();
    return c;
}

EngineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json_text(const EngineConfig& config) {
    return to_json(config).dump(2) + "\n";
}

std::string EngineConfig::hash() const {
    const std::string canon = to_json(*this).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace kgex
