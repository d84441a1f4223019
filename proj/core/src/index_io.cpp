#include "kgex/index_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgex/error.hpp"

namespace kgex {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw Error("failed to format double");
    return std::string(buf, ptr);
}

namespace {

void write_vectors(std::ostream& out, const std::vector<Vec>& vs) {
    for (const Vec& v : vs) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out << ',';
            out << format_double(v[i]);
        }
        out << '\n';
    }
}

std::vector<Vec> read_vectors(std::istream& in, size_t count, size_t dim, const char* what) {
    std::vector<Vec> out;
    out.reserve(count);
    std::string line;
    for (size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) {
            throw ParseError(std::string("truncated vector block in ") + what);
        }
        Vec v;
        v.reserve(dim);
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            std::string tok = comma == std::string::npos ? line.substr(pos)
                                                         : line.substr(pos, comma - pos);
            double x = 0.0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (ec != std::errc{} || p != tok.data() + tok.size()) {
                throw ParseError(std::string("bad vector component in ") + what);
            }
            v.push_back(x);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (v.size() != dim) {
            throw ParseError(std::string("vector dimension mismatch in ") + what);
        }
        out.push_back(std::move(v));
    }
    return out;
}

void expect_header(std::istream& in, const std::string& magic, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(std::string(what) + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != magic) {
        throw ParseError(std::string(what) + ": unsupported format or version (got '" + line +
                         "', want '" + magic + "')");
    }
}

size_t read_counted(std::istream& in, const std::string& key, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(std::string(what) + ": truncated");
    std::istringstream ss(line);
    std::string k;
    size_t n = 0;
    if (!(ss >> k >> n) || k != key) {
        throw ParseError(std::string(what) + ": expected '" + key + " <count>'");
    }
    return n;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    return out;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError("cannot open " + p.string());
    return in;
}

} // namespace

void save_index(const std::string& dir, const KnowledgeGraph& g, const EmbeddingStore& store,
                const ClusterModel& clusters, const EngineConfig& config) {
    fs::create_directories(dir);

    {
        auto out = open_out(fs::path(dir) / "graph.txt");
        out << "kgex-graph " << kIndexFormatVersion << '\n';
        out << "entities " << g.entity_count() << '\n';
        for (std::uint32_t i = 0; i < g.entity_count(); ++i) {
            out << g.entity_name(EntityId{i}) << '\n';
        }
        out << "relations " << g.relation_count() << '\n';
        for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
            out << g.relation_name(RelationId{i}) << '\n';
        }
        out << "triples " << g.triple_count() << '\n';
        for (const Triple& t : g.triples()) {
            out << t.head.value << ' ' << t.relation.value << ' ' << t.tail.value << '\n';
        }
    }
    {
        auto out = open_out(fs::path(dir) / "embeddings.txt");
        out << "kgex-embeddings " << kIndexFormatVersion << '\n';
        out << "dim " << store.dim() << '\n';
        out << "seed " << store.seed() << '\n';
        out << "backend " << backend_tag(store.backend()) << '\n';
        out << "entity_base " << store.entity_base_vectors().size() << '\n';
        write_vectors(out, store.entity_base_vectors());
        out << "relation_base " << store.relation_base_vectors().size() << '\n';
        write_vectors(out, store.relation_base_vectors());
        out << "aggregated " << store.aggregated_vectors().size() << '\n';
        write_vectors(out, store.aggregated_vectors());
    }
    {
        auto out = open_out(fs::path(dir) / "clusters.txt");
        out << "kgex-clusters " << kIndexFormatVersion << '\n';
        out << "k " << clusters.cluster_count() << '\n';
        out << "dim " << (clusters.centroids.empty() ? 0 : clusters.centroids.front().size())
            << '\n';
        write_vectors(out, clusters.centroids);
        out << "assignments " << clusters.assignment.size() << '\n';
        for (std::uint32_t a : clusters.assignment) out << a << '\n';
    }
    {
        json manifest;
        manifest["format"] = "kgex-index";
        manifest["version"] = kIndexFormatVersion;
        manifest["entities"] = g.entity_count();
        manifest["relations"] = g.relation_count();
        manifest["triples"] = g.triple_count();
        manifest["dim"] = store.dim();
        manifest["seed"] = store.seed();
        manifest["backend"] = backend_tag(store.backend());
        manifest["layers"] = config.aggregation_layers;
        manifest["clusters"] = clusters.cluster_count();
        manifest["config_hash"] = config.hash();
        auto out = open_out(fs::path(dir) / "manifest.json");
        out << manifest.dump(2) << '\n';
    }
}

LoadedIndex load_index(const std::string& dir) {
    {
        auto in = open_in(fs::path(dir) / "manifest.json");
        json manifest;
        try {
            in >> manifest;
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad index manifest: ") + e.what());
        }
        if (manifest.value("format", "") != "kgex-index" ||
            manifest.value("version", -1) != kIndexFormatVersion) {
            throw ParseError("index manifest has unsupported format/version");
        }
    }

    KnowledgeGraph g;
    {
        auto in = open_in(fs::path(dir) / "graph.txt");
        expect_header(in, "kgex-graph " + std::to_string(kIndexFormatVersion), "graph.txt");
        size_t n_ent = read_counted(in, "entities", "graph.txt");
        std::string line;
        for (size_t i = 0; i < n_ent; ++i) {
            if (!std::getline(in, line)) throw ParseError("graph.txt: truncated entity block");
            g.intern_entity(line);
        }
        size_t n_rel = read_counted(in, "relations", "graph.txt");
        for (size_t i = 0; i < n_rel; ++i) {
            if (!std::getline(in, line)) throw ParseError("graph.txt: truncated relation block");
            g.intern_relation(line);
        }
        size_t n_tri = read_counted(in, "triples", "graph.txt");
        for (size_t i = 0; i < n_tri; ++i) {
            if (!std::getline(in, line)) throw ParseError("graph.txt: truncated triple block");
            std::istringstream ss(line);
            std::uint32_t h = 0, r = 0, t = 0;
            if (!(ss >> h >> r >> t)) throw ParseError("graph.txt: bad triple line");
            if (h >= n_ent || t >= n_ent || r >= n_rel) {
                throw ParseError("graph.txt: triple id out of range");
            }
            g.add_triple(EntityId{h}, RelationId{r}, EntityId{t});
        }
        g.finalize();
    }

    fs::path emb_path = fs::path(dir) / "embeddings.txt";
    auto in = open_in(emb_path);
    expect_header(in, "kgex-embeddings " + std::to_string(kIndexFormatVersion),
                  "embeddings.txt");
    size_t dim = read_counted(in, "dim", "embeddings.txt");
    size_t seed = read_counted(in, "seed", "embeddings.txt");
    std::string backend_line;
    if (!std::getline(in, backend_line)) throw ParseError("embeddings.txt: truncated");
    std::istringstream bs(backend_line);
    std::string bkey, btag;
    if (!(bs >> bkey >> btag) || bkey != "backend") {
        throw ParseError("embeddings.txt: expected 'backend <tag>'");
    }
    EmbeddingStore store(dim, seed, backend_from_tag(btag));
    size_t n = read_counted(in, "entity_base", "embeddings.txt");
    store.set_entity_base(read_vectors(in, n, dim, "embeddings.txt"));
    n = read_counted(in, "relation_base", "embeddings.txt");
    store.set_relation_base(read_vectors(in, n, dim, "embeddings.txt"));
    n = read_counted(in, "aggregated", "embeddings.txt");
    store.set_aggregated(read_vectors(in, n, dim, "embeddings.txt"));

    ClusterModel clusters;
    {
        auto cin = open_in(fs::path(dir) / "clusters.txt");
        expect_header(cin, "kgex-clusters " + std::to_string(kIndexFormatVersion),
                      "clusters.txt");
        size_t k = read_counted(cin, "k", "clusters.txt");
        size_t cdim = read_counted(cin, "dim", "clusters.txt");
        clusters.centroids = read_vectors(cin, k, cdim, "clusters.txt");
        size_t n_assign = read_counted(cin, "assignments", "clusters.txt");
        clusters.assignment.reserve(n_assign);
        std::string line;
        for (size_t i = 0; i < n_assign; ++i) {
            if (!std::getline(cin, line)) throw ParseError("clusters.txt: truncated");
            std::uint32_t a = 0;
            auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), a);
            if (ec != std::errc{} || a >= k) throw ParseError("clusters.txt: bad assignment");
            clusters.assignment.push_back(a);
        }
    }

    if (store.entity_base_vectors().size() != g.entity_count() ||
        store.aggregated_vectors().size() != g.entity_count() ||
        clusters.assignment.size() != g.entity_count()) {
        throw ParseError("index files disagree on entity count");
    }
    return LoadedIndex{std::move(g), std::move(store), std::move(clusters)};
}

} // namespace kgex
