#include "kgex/embedding.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "kgex/encoder.hpp"
#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

const char* backend_tag(EmbeddingBackend b) {
    switch (b) {
        case EmbeddingBackend::HashDeterministic: return "hash";
        case EmbeddingBackend::File: return "file";
        case EmbeddingBackend::HttpEncoder: return "http";
    }
    return "hash";
}

EmbeddingBackend backend_from_tag(const std::string& tag) {
    if (tag == "hash") return EmbeddingBackend::HashDeterministic;
    if (tag == "file") return EmbeddingBackend::File;
    if (tag == "http") return EmbeddingBackend::HttpEncoder;
    throw ConfigError("unknown embedding backend: " + tag);
}

namespace {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

Vec hash_unit_vector(std::string_view name, std::uint64_t seed, size_t dim) {
    std::uint64_t state = fnv1a64(name) ^ (seed * 0x9e3779b97f4a7c15ULL);
    Vec v(dim);
    for (size_t i = 0; i < dim; ++i) {
        v[i] = 2.0 * unit_interval(splitmix64(state)) - 1.0;
    }
    vec::normalize(v);
    return v;
}

const Vec& EmbeddingStore::base(EntityId v) const {
    if (v.value >= entity_base_.size()) {
        throw LookupError("no base vector for entity id " + std::to_string(v.value));
    }
    return entity_base_[v.value];
}

const Vec& EmbeddingStore::base(RelationId r) const {
    if (r.value >= relation_base_.size()) {
        throw LookupError("no base vector for relation id " + std::to_string(r.value));
    }
    return relation_base_[r.value];
}

const Vec& EmbeddingStore::aggregated(EntityId v) const {
    if (v.value >= entity_agg_.size()) {
        throw LookupError("no aggregated vector for entity id " + std::to_string(v.value));
    }
    return entity_agg_[v.value];
}

std::map<std::string, Vec> load_embedding_file(std::istream& in, size_t& dim_out) {
    std::map<std::string, Vec> out;
    std::string line;
    size_t line_no = 0;
    size_t dim = 0;

    if (!std::getline(in, line)) throw ParseError("embedding file is empty");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("dim=", 0) != 0) {
        throw ParseError("embedding file must start with a dim=<d> header");
    }
    {
        std::string_view num(line);
        num.remove_prefix(4);
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), dim);
        if (ec != std::errc{} || dim < 2) {
            throw ParseError("bad embedding dimension header: " + line);
        }
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("embedding line " + std::to_string(line_no) +
                             ": expected name<TAB>values");
        }
        std::string name(line.substr(0, tab));
        Vec v;
        v.reserve(dim);
        std::stringstream ss(line.substr(tab + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                v.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ParseError("embedding line " + std::to_string(line_no) +
                                 ": bad component '" + tok + "'");
            }
        }
        if (v.size() != dim) {
            throw ParseError("embedding line " + std::to_string(line_no) +
                             ": dimension mismatch, expected " + std::to_string(dim) +
                             " got " + std::to_string(v.size()));
        }
        if (!vec::all_finite(v)) {
            throw ParseError("embedding line " + std::to_string(line_no) +
                             ": non-finite component");
        }
        out[name] = std::move(v);
    }
    dim_out = dim;
    return out;
}

std::map<std::string, Vec> load_embedding_file(const std::string& path, size_t& dim_out) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open embedding file: " + path);
    return load_embedding_file(in, dim_out);
}

namespace {

std::vector<Vec> vectors_for_names(const std::map<std::string, Vec>& table,
                                   const std::vector<std::string>& names,
                                   const char* kind) {
    std::vector<Vec> out;
    out.reserve(names.size());
    for (const auto& name : names) {
        auto it = table.find(name);
        if (it == table.end()) {
            throw ParseError(std::string("embedding file is missing ") + kind +
                             " '" + name + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

std::vector<std::string> all_entity_names(const KnowledgeGraph& g) {
    std::vector<std::string> names;
    names.reserve(g.entity_count());
    for (std::uint32_t i = 0; i < g.entity_count(); ++i) {
        names.push_back(g.entity_name(EntityId{i}));
    }
    return names;
}

std::vector<std::string> all_relation_names(const KnowledgeGraph& g) {
    std::vector<std::string> names;
    names.reserve(g.relation_count());
    for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
        names.push_back(g.relation_name(RelationId{i}));
    }
    return names;
}

} // namespace

EmbeddingStore init_embeddings(const KnowledgeGraph& g, const EmbeddingInitOptions& opts) {
    if (opts.dim < 2) throw ConfigError("embedding dim must be >= 2");

    const auto entity_names = all_entity_names(g);
    const auto relation_names = all_relation_names(g);

    switch (opts.backend) {
        case EmbeddingBackend::HashDeterministic: {
            EmbeddingStore store(opts.dim, opts.seed, opts.backend);
            std::vector<Vec> ev;
            ev.reserve(entity_names.size());
            for (const auto& n : entity_names) {
                ev.push_back(hash_unit_vector(n, opts.seed, opts.dim));
            }
            std::vector<Vec> rv;
            rv.reserve(relation_names.size());
            for (const auto& n : relation_names) {
                rv.push_back(hash_unit_vector("rel:" + n, opts.seed, opts.dim));
            }
            store.set_entity_base(std::move(ev));
            store.set_relation_base(std::move(rv));
            return store;
        }
        case EmbeddingBackend::File: {
            if (opts.entity_file.empty()) {
                throw ConfigError("file backend requires an entity embedding file");
            }
            size_t dim = 0;
            auto etable = load_embedding_file(opts.entity_file, dim);
            EmbeddingStore store(dim, opts.seed, opts.backend);
            store.set_entity_base(vectors_for_names(etable, entity_names, "entity"));
            if (!opts.relation_file.empty()) {
                size_t rdim = 0;
                auto rtable = load_embedding_file(opts.relation_file, rdim);
                if (rdim != dim) {
                    throw ParseError("relation embedding dim " + std::to_string(rdim) +
                                     " does not match entity dim " + std::to_string(dim));
                }
                store.set_relation_base(vectors_for_names(rtable, relation_names, "relation"));
            } else {
                std::vector<Vec> rv;
                rv.reserve(relation_names.size());
                for (const auto& n : relation_names) {
                    rv.push_back(hash_unit_vector("rel:" + n, opts.seed, dim));
                }
                store.set_relation_base(std::move(rv));
            }
            return store;
        }
        case EmbeddingBackend::HttpEncoder: {
            if (opts.encoder_url.empty()) {
                throw ConfigError("http backend requires an encoder url");
            }
            HttpTextEncoder enc(opts.encoder_url);
            auto ev = enc.encode_batch(entity_names);
            std::vector<std::string> rel_texts;
            rel_texts.reserve(relation_names.size());
            for (const auto& n : relation_names) rel_texts.push_back("relation " + n);
            auto rv = enc.encode_batch(rel_texts);
            size_t dim = ev.empty() ? opts.dim : ev.front().size();
            for (const auto& v : ev) {
                if (v.size() != dim) throw BackendError("encoder returned mixed dimensions");
            }
            for (const auto& v : rv) {
                if (v.size() != dim) throw BackendError("encoder returned mixed dimensions");
            }
            EmbeddingStore store(dim, opts.seed, opts.backend);
            store.set_entity_base(std::move(ev));
            store.set_relation_base(std::move(rv));
            return store;
        }
    }
    throw ConfigError("unknown embedding backend");
}

EmbeddingStore scaled_base_copy(const EmbeddingStore& store, double c) {
    if (!(c > 0.0)) throw ConfigError("scale factor must be positive");
    EmbeddingStore out(store.dim(), store.seed(), store.backend());
    auto ev = store.entity_base_vectors();
    auto rv = store.relation_base_vectors();
    for (auto& v : ev) vec::scale_inplace(v, c);
    for (auto& v : rv) vec::scale_inplace(v, c);
    out.set_entity_base(std::move(ev));
    out.set_relation_base(std::move(rv));
    return out;
}

} // namespace kgex
