#include <doctest.h>

#include <random>
#include <sstream>

#include "kgex/error.hpp"
#include "kgex/graph.hpp"

using namespace kgex;

TEST_CASE("load_graph dedups and counts degrees") {
    std::istringstream in("a\tr\tb\na\ts\tc\na\tr\tb\n# comment\n");
    KnowledgeGraph g = load_graph(in);
    CHECK(g.triple_count() == 2);
    CHECK(g.entity_count() == 3);
    CHECK(g.degree(*g.find_entity("a")) == 2);
    CHECK(g.degree(*g.find_entity("b")) == 1);
    CHECK(g.degree(*g.find_entity("c")) == 1);
}

TEST_CASE("load_graph keeps three distinct triples among four lines") {
    std::istringstream in("a\tr\tb\nb\tr\tc\nc\tr\ta\na\tr\tb\n");
    KnowledgeGraph g = load_graph(in);
    CHECK(g.triple_count() == 3);
}

TEST_CASE("malformed line reports its line number") {
    std::istringstream in("a\tr\tb\na\tr\n");
    CHECK_THROWS_WITH_AS(load_graph(in), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("four fields is malformed") {
    std::istringstream in("a\tr\tb\tc\n");
    CHECK_THROWS_AS(load_graph(in), ParseError);
}

TEST_CASE("empty input is an error") {
    std::istringstream in("# only comments\n\n");
    CHECK_THROWS_AS(load_graph(in), ParseError);
}

TEST_CASE("self-loops are dropped") {
    std::istringstream in("a\tr\ta\nb\tr\tc\n");
    KnowledgeGraph g = load_graph(in);
    CHECK(g.triple_count() == 1);
    CHECK(g.self_loops_dropped() == 1);
}

TEST_CASE("neighbors includes both directions with tags") {
    std::istringstream in("a\tr\tb\n");
    KnowledgeGraph g = load_graph(in);
    auto b = *g.find_entity("b");
    auto edges = g.neighbors(b);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].relation == *g.find_relation("r"));
    CHECK(edges[0].neighbor == *g.find_entity("a"));
    CHECK(edges[0].direction == Direction::Incoming);
}

TEST_CASE("isolated node has no neighbors") {
    std::istringstream in("a\tr\tb\n");
    KnowledgeGraph g = load_graph(in);
    // intern a node with no incident triples, then rebuild adjacency
    EntityId lonely = g.intern_entity("lonely");
    g.finalize();
    CHECK(g.neighbors(lonely).empty());
    CHECK(g.degree(lonely) == 0);
}

TEST_CASE("star node neighbors are sorted by (relation, neighbor)") {
    // Deliberately interleave relation/neighbor insertion order.
    std::istringstream in("hub\ts\tn3\nn1\tr\thub\nhub\tr\tn4\nhub\ts\tn0\nn2\tr\thub\n");
    KnowledgeGraph g = load_graph(in);
    auto hub = *g.find_entity("hub");
    auto edges = g.neighbors(hub);
    REQUIRE(edges.size() == 5);
    // Independent oracle: enumerate and sort.
    std::vector<AdjEdge> expected(edges.begin(), edges.end());
    std::sort(expected.begin(), expected.end());
    CHECK(std::equal(edges.begin(), edges.end(), expected.begin()));
    for (size_t i = 1; i < edges.size(); ++i) {
        CHECK(std::pair(edges[i - 1].relation, edges[i - 1].neighbor) <=
              std::pair(edges[i].relation, edges[i].neighbor));
    }
}

TEST_CASE("unknown entity lookups throw") {
    std::istringstream in("a\tr\tb\n");
    KnowledgeGraph g = load_graph(in);
    CHECK_THROWS_AS(g.neighbors(EntityId{99}), LookupError);
    CHECK_THROWS_AS(g.entity_name(EntityId{99}), LookupError);
    CHECK(!g.find_entity("zzz").has_value());
}

TEST_CASE("degree sum equals twice the triple count on random graphs") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        std::ostringstream src;
        size_t n = 3 + rng() % 10;
        size_t m = 1 + rng() % 25;
        for (size_t e = 0; e < m; ++e) {
            size_t h = rng() % n;
            size_t t = rng() % n;
            if (h == t) t = (t + 1) % n;
            src << "e" << h << "\tr" << rng() % 3 << "\te" << t << "\n";
        }
        std::istringstream in(src.str());
        KnowledgeGraph g = load_graph(in);
        size_t total = 0;
        for (std::uint32_t v = 0; v < g.entity_count(); ++v) {
            total += g.degree(EntityId{v});
            CHECK(g.neighbors(EntityId{v}).size() == g.degree(EntityId{v}));
        }
        CHECK(total == 2 * g.triple_count());
    }
}
