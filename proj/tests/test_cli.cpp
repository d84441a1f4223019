#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Scratch area holding a config that points at the bundled toy data with
/// an index directory local to the test run.
struct CliFixture {
    fs::path root;
    fs::path config_path;

    CliFixture() {
        root = fs::temp_directory_path() /
               ("kgex_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(root);
        json config = {
            {"triples", std::string(KGEX_TOY_DIR) + "/triples.tsv"},
            {"catalog", std::string(KGEX_TOY_DIR) + "/catalog.jsonl"},
            {"histories", std::string(KGEX_TOY_DIR) + "/histories.jsonl"},
            {"index_dir", (root / "index").string()},
        };
        config_path = root / "config.json";
        std::ofstream(config_path) << config.dump(2);
    }
    ~CliFixture() { fs::remove_all(root); }

    int run(std::vector<std::string> args) const { return kgex::cli::run(args); }

    int index() const { return run({"index", "--config", config_path.string()}); }

    std::string out(const char* name) const { return (root / name).string(); }
};

} // namespace

TEST_CASE("index then retrieve produces a full score decomposition") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    CHECK(fs::exists(f.root / "index" / "manifest.json"));

    REQUIRE(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--out", f.out("r1")}) == 0);
    json rec = json::parse(slurp(f.root / "r1" / "retrieval.jsonl"));
    CHECK(rec["user_id"] == "u_nora");
    CHECK(rec["paths"].size() == 5);
    for (const auto& p : rec["paths"]) {
        CHECK(p["score"].contains("relevance"));
        CHECK(p["score"].contains("mean_specificity"));
        CHECK(p["score"].contains("final"));
        CHECK(!p["node_specificity"].empty());
    }
    double sum = 0.0;
    for (const auto& w : rec["attention"]) sum += w.get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("missing triples file exits with code 2 naming the path") {
    CliFixture f;
    json config = {{"triples", "/nonexistent/triples.tsv"},
                   {"catalog", std::string(KGEX_TOY_DIR) + "/catalog.jsonl"},
                   {"histories", std::string(KGEX_TOY_DIR) + "/histories.jsonl"},
                   {"index_dir", (f.root / "index").string()}};
    fs::path bad = f.root / "bad.json";
    std::ofstream(bad) << config.dump();
    CHECK(f.run({"index", "--config", bad.string()}) == 2);
}

TEST_CASE("usage errors exit with code 1") {
    CliFixture f;
    CHECK(f.run({"retrieve", "--config", f.config_path.string()}) == 1);   // missing user/item
    CHECK(f.run({"bogus-subcommand"}) == 1);
    CHECK(f.run({}) == 1);
}

TEST_CASE("unknown user or item exits with code 2") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    CHECK(f.run({"retrieve", "--config", f.config_path.string(), "--user", "nobody", "--item",
                 "b_eleanor", "--out", f.out("r")}) == 2);
    CHECK(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora", "--item",
                 "b_missing", "--out", f.out("r")}) == 2);
}

TEST_CASE("only-1hop restricts every selected path to one hop") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--only-1hop", "--out", f.out("r")}) == 0);
    json rec = json::parse(slurp(f.root / "r" / "retrieval.jsonl"));
    for (const auto& p : rec["paths"]) CHECK(p["hops"] == 1);
}

TEST_CASE("no-mmr output is strictly less diverse on near-duplicate paths") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--out", f.out("mmr")}) == 0);
    REQUIRE(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--no-mmr", "--out", f.out("plain")}) == 0);
    json with_mmr = json::parse(slurp(f.root / "mmr" / "retrieval.jsonl"));
    json without = json::parse(slurp(f.root / "plain" / "retrieval.jsonl"));
    CHECK(with_mmr["paths"] != without["paths"]);
}

TEST_CASE("explain with the stub backend writes explanation and provenance") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"explain", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--out", f.out("e")}) == 0);
    std::string text = slurp(f.root / "e" / "explanation.txt");
    CHECK(text.find("Eleanor") != std::string::npos);
    json prov = json::parse(slurp(f.root / "e" / "provenance.json"));
    CHECK(prov["backend"] == "stub");
    CHECK(prov["evidence"].size() == 5);
    CHECK(prov["prompt_hash"].get<std::string>().size() == 16);
}

TEST_CASE("dump-prompt writes the bundle without touching any backend") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"explain", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--dump-prompt", "--out", f.out("p")}) == 0);
    std::string prompt = slurp(f.root / "p" / "prompt.txt");
    CHECK(prompt.find("### Evidence") != std::string::npos);
    CHECK(!fs::exists(f.root / "p" / "explanation.txt"));
}

TEST_CASE("no-kg prompts have no evidence section and still explain") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"explain", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--no-kg", "--out", f.out("nokg")}) == 0);
    std::string prompt = slurp(f.root / "nokg" / "prompt.txt");
    CHECK(prompt.find("### Evidence") == std::string::npos);
    CHECK(!slurp(f.root / "nokg" / "explanation.txt").empty());
}

TEST_CASE("eval reports fixture metrics and a monotone tau sweep") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"eval", "--config", f.config_path.string(), "--corpus",
                   std::string(KGEX_TOY_DIR) + "/eval_corpus.jsonl", "--tau-sweep",
                   "0.0:1.0:0.1", "--out", f.out("ev")}) == 0);
    json report = json::parse(slurp(f.root / "ev" / "report.json"));
    CHECK(report["corpus"]["scoreable"] == 10);
    CHECK(report["instances"].size() == 10);

    std::string csv = slurp(f.root / "ev" / "tau_sweep.csv");
    size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 12);   // header + 11 grid rows
    // Monotone non-decreasing in tau.
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    double prev = -1.0;
    while (std::getline(ss, line)) {
        double tau = 0.0, p = 0.0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &tau, &p) == 2);
        CHECK(p >= prev - 1e-12);
        prev = p;
    }
}

TEST_CASE("a corpus where nothing is extractable exits with code 2") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    fs::path corpus = f.root / "empty.jsonl";
    std::ofstream(corpus) << R"({"user_id": "u_nora", "item_id": "b_eleanor", "explanation": "nothing to see"})"
                          << "\n";
    CHECK(f.run({"eval", "--config", f.config_path.string(), "--corpus", corpus.string(),
                 "--out", f.out("ev2")}) == 2);
}

TEST_CASE("flag overrides win over the config file") {
    CliFixture f;
    REQUIRE(f.index() == 0);
    REQUIRE(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                   "--item", "b_eleanor", "--top-paths", "2", "--out", f.out("two")}) == 0);
    json rec = json::parse(slurp(f.root / "two" / "retrieval.jsonl"));
    CHECK(rec["paths"].size() == 2);
}

TEST_CASE("retrieve without a built index exits with code 2") {
    CliFixture f;
    CHECK(f.run({"retrieve", "--config", f.config_path.string(), "--user", "u_nora",
                 "--item", "b_eleanor", "--out", f.out("r")}) == 2);
}
