#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgex/error.hpp"
#include "kgex/index_io.hpp"
#include "kgex/kmeans.hpp"

using namespace kgex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("kgex_idx_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Built {
    KnowledgeGraph graph;
    EmbeddingStore store;
    ClusterModel clusters;
    EngineConfig config;
};

Built build_small() {
    std::istringstream in("a\tr\tb\nb\ts\tc\nc\tr\td\nd\ts\ta\n");
    KnowledgeGraph g = load_graph(in);
    EmbeddingInitOptions opts;
    opts.dim = 8;
    opts.seed = 5;
    EmbeddingStore store = aggregate_structure(g, init_embeddings(g, opts), 2);
    ClusterModel clusters = kmeans_fit(store, 2, 5);
    EngineConfig config;
    config.aggregation_layers = 2;
    config.cluster_count = 2;
    return Built{std::move(g), std::move(store), std::move(clusters), std::move(config)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("index round trip reproduces ids, adjacency order, degrees, and vectors") {
    Built b = build_small();
    TempDir dir;
    save_index(dir.path.string(), b.graph, b.store, b.clusters, b.config);
    LoadedIndex idx = load_index(dir.path.string());

    REQUIRE(idx.graph.entity_count() == b.graph.entity_count());
    REQUIRE(idx.graph.triple_count() == b.graph.triple_count());
    for (std::uint32_t v = 0; v < b.graph.entity_count(); ++v) {
        EntityId id{v};
        CHECK(idx.graph.entity_name(id) == b.graph.entity_name(id));
        CHECK(idx.graph.degree(id) == b.graph.degree(id));
        auto e1 = b.graph.neighbors(id);
        auto e2 = idx.graph.neighbors(id);
        REQUIRE(e1.size() == e2.size());
        CHECK(std::equal(e1.begin(), e1.end(), e2.begin()));
    }
    // Vectors survive bit-exactly (shortest round-trip formatting).
    CHECK(idx.store.entity_base_vectors() == b.store.entity_base_vectors());
    CHECK(idx.store.aggregated_vectors() == b.store.aggregated_vectors());
    CHECK(idx.store.relation_base_vectors() == b.store.relation_base_vectors());
    CHECK(idx.clusters.assignment == b.clusters.assignment);
    CHECK(idx.clusters.centroids == b.clusters.centroids);
    CHECK(idx.store.seed() == b.store.seed());
    CHECK(idx.store.dim() == b.store.dim());
}

TEST_CASE("saving twice produces byte-identical files") {
    Built b = build_small();
    TempDir d1;
    TempDir d2;
    save_index(d1.path.string(), b.graph, b.store, b.clusters, b.config);
    save_index(d2.path.string(), b.graph, b.store, b.clusters, b.config);
    for (const char* name : {"graph.txt", "embeddings.txt", "clusters.txt", "manifest.json"}) {
        CHECK(slurp(d1.path / name) == slurp(d2.path / name));
    }
}

TEST_CASE("version mismatches are rejected") {
    Built b = build_small();
    TempDir dir;
    save_index(dir.path.string(), b.graph, b.store, b.clusters, b.config);

    SUBCASE("graph header") {
        std::string text = slurp(dir.path / "graph.txt");
        text.replace(text.find("kgex-graph 1"), 12, "kgex-graph 9");
        std::ofstream(dir.path / "graph.txt", std::ios::binary) << text;
        CHECK_THROWS_WITH_AS(load_index(dir.path.string()), doctest::Contains("version"),
                             ParseError);
    }
    SUBCASE("manifest version") {
        std::ofstream(dir.path / "manifest.json", std::ios::binary)
            << R"({"format": "kgex-index", "version": 99})";
        CHECK_THROWS_AS(load_index(dir.path.string()), ParseError);
    }
    SUBCASE("missing file") {
        fs::remove(dir.path / "embeddings.txt");
        CHECK_THROWS_AS(load_index(dir.path.string()), ParseError);
    }
}

TEST_CASE("format_double round-trips exactly") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.6789, 0.0}) {
        CHECK(std::stod(format_double(x)) == x);
    }
}
