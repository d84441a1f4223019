#include <doctest.h>

#include <atomic>
#include <thread>

#include <json.hpp>

#include "kgex/error.hpp"
#include "kgex/features.hpp"
#include "kgex/generate.hpp"
#include "kgex/prompt.hpp"
#include "test_http_util.hpp"

using namespace kgex;
using nlohmann::json;

namespace {

GenerationRequest request_for(const std::string& evidence) {
    PromptBundle bundle = assemble_prompt("sys", "- history item\n", "Great Movie", evidence);
    return GenerationRequest{bundle.text(), {}};
}

} // namespace

TEST_CASE("stub mentions exactly the attributes of explicit and implicit lines") {
    StubBackend stub;
    std::string evidence =
        "[EXPLICIT] (Great Movie) -[has_feature]-> (plot)\n"
        "[EXPLICIT] (Great Movie) -[has_feature]-> (humor)\n"
        "[RELATIONAL] (Other) -[has_feature]-> (cgi) -[has_feature]-> (Great Movie)\n";
    GenerationResponse resp = stub.generate(request_for(evidence));
    FeatureSet got = extract_features(resp.text, {"plot", "humor", "cgi", "drama"});
    CHECK(got.features == std::set<std::string>{"plot", "humor"});
    CHECK(resp.backend == "stub");
}

TEST_CASE("stub pulls the target-adjacent entity from implicit lines") {
    StubBackend stub;
    std::string evidence =
        "[IMPLICIT] (Old Movie) -[has_feature]-> (mood) -[related_to]-> (slow burn) "
        "-[has_feature]-> (Great Movie)\n";
    GenerationResponse resp = stub.generate(request_for(evidence));
    FeatureSet got = extract_features(resp.text, {"mood", "slow burn", "plot"});
    CHECK(got.features == std::set<std::string>{"slow burn"});
}

TEST_CASE("stub with no evidence emits a fixed generic sentence with zero features") {
    StubBackend stub;
    GenerationResponse resp = stub.generate(request_for(""));
    CHECK(!resp.text.empty());
    FeatureSet got = extract_features(resp.text, {"plot", "humor", "cgi"});
    CHECK(got.features.empty());
}

TEST_CASE("stub is a pure function of the prompt") {
    StubBackend stub;
    auto req = request_for("[EXPLICIT] (Great Movie) -[has_feature]-> (plot)\n");
    CHECK(stub.generate(req).text == stub.generate(req).text);
    auto other = request_for("[EXPLICIT] (Great Movie) -[has_feature]-> (humor)\n");
    CHECK(stub.generate(req).text != stub.generate(other).text);
}

TEST_CASE("stub tolerates concurrent requests") {
    StubBackend stub;
    auto req = request_for("[EXPLICIT] (Great Movie) -[has_feature]-> (plot)\n");
    std::string expected = stub.generate(req).text;
    std::atomic<bool> ok{true};
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i) {
        threads.emplace_back([&] {
            for (int k = 0; k < 50; ++k) {
                if (stub.generate(req).text != expected) ok = false;
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(ok.load());
}

TEST_CASE("http completion backend posts decoding parameters and returns text") {
    testutil::ScopedServer srv;
    json seen;
    srv.server().Post("/complete", [&](const httplib::Request& req, httplib::Response& res) {
        seen = json::parse(req.body);
        res.set_content(R"({"text": "a fine pick"})", "application/json");
    });
    std::string url = srv.start();
    HttpCompletionBackend backend(url, "secret-token");
    GenerationRequest req{"PROMPT", DecodingParams{128, 0.0, 7}};
    GenerationResponse resp = backend.generate(req);
    CHECK(resp.text == "a fine pick");
    CHECK(resp.backend == "http");
    CHECK(seen["prompt"] == "PROMPT");
    CHECK(seen["max_tokens"] == 128);
    CHECK(seen["seed"] == 7);
}

TEST_CASE("http completion backend retries once then fails") {
    testutil::ScopedServer srv;
    std::atomic<int> calls{0};
    srv.server().Post("/complete", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.status = 503;
    });
    std::string url = srv.start();
    HttpCompletionBackend backend(url);
    CHECK_THROWS_AS(backend.generate(GenerationRequest{"p", {}}), BackendError);
    CHECK(calls.load() == 2);
}

TEST_CASE("malformed and empty completions are backend errors") {
    testutil::ScopedServer srv;
    srv.server().Post("/complete", [&](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body);
        if (body["prompt"] == "garbled") {
            res.set_content("not json", "application/json");
        } else {
            res.set_content(R"({"text": "   "})", "application/json");
        }
    });
    std::string url = srv.start();
    HttpCompletionBackend backend(url);
    CHECK_THROWS_AS(backend.generate(GenerationRequest{"garbled", {}}), BackendError);
    CHECK_THROWS_AS(backend.generate(GenerationRequest{"empty", {}}), BackendError);
}

TEST_CASE("endpoint down surfaces a connection error") {
    HttpCompletionBackend backend("http://127.0.0.1:9", "", 1);
    CHECK_THROWS_AS(backend.generate(GenerationRequest{"p", {}}), BackendError);
}

TEST_CASE("backend factory validates its inputs") {
    CHECK(make_generation_backend("stub", "", "", 30)->tag() == "stub");
    CHECK_THROWS_AS(make_generation_backend("http", "", "", 30), ConfigError);
    CHECK_THROWS_AS(make_generation_backend("llama", "", "", 30), ConfigError);
}
