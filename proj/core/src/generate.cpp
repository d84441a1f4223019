#include "kgex/generate.hpp"

#include <chrono>
#include <sstream>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "kgex/error.hpp"
#include "kgex/prompt.hpp"
#include "kgex/text.hpp"

namespace kgex {

using nlohmann::json;

namespace {

// Pulls the body of one "### <name>" section out of an assembled prompt.
std::string prompt_section(const std::string& prompt, const std::string& name) {
    const std::string header = "### " + name + "\n";
    size_t begin = prompt.find(header);
    if (begin == std::string::npos) return "";
    begin += header.size();
    size_t end = prompt.find("\n### ", begin);
    if (end == std::string::npos) end = prompt.size();
    return prompt.substr(begin, end - begin);
}

} // namespace

GenerationResponse StubBackend::generate(const GenerationRequest& req) const {
    const std::string evidence = prompt_section(req.prompt, "Evidence");
    std::string target = std::string(trim(prompt_section(req.prompt, "Target")));

    // Attribute entity per evidence line: the non-target endpoint for
    // 1-hop paths, the target-adjacent entity for 3-hop paths. 2-hop
    // (RELATIONAL) lines carry bridge context and contribute no mention.
    std::vector<std::string> mentions;
    for (const auto& line : parse_evidence_block(evidence)) {
        std::string attr;
        if (line.role == HopRole::Explicit) {
            attr = line.entities.back();
        } else if (line.role == HopRole::Implicit) {
            attr = line.entities[line.entities.size() - 2];
        } else {
            continue;
        }
        bool seen = false;
        for (const auto& m : mentions) {
            if (m == attr) {
                seen = true;
                break;
            }
        }
        if (!seen) mentions.push_back(attr);
    }

    std::string text;
    if (mentions.empty()) {
        text = "This pick simply fits the overall shape of your past choices.";
    } else {
        std::string joined;
        for (size_t i = 0; i < mentions.size(); ++i) {
            if (i > 0) joined += " and ";
            joined += mentions[i];
        }
        text = "We suggest " + (target.empty() ? std::string("this item") : target) +
               " for its " + joined + ".";
    }
    return GenerationResponse{std::move(text), 0.0, tag()};
}

namespace {

std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, ""};
    return {url.substr(0, slash), url.substr(slash)};
}

} // namespace

HttpCompletionBackend::HttpCompletionBackend(std::string base_url, std::string auth_token,
                                             int timeout_seconds)
    : base_url_(std::move(base_url)),
      auth_token_(std::move(auth_token)),
      timeout_seconds_(timeout_seconds) {}

GenerationResponse HttpCompletionBackend::generate(const GenerationRequest& req) const {
    auto [host, prefix] = split_url(base_url_);
    json body;
    body["prompt"] = req.prompt;
    body["max_tokens"] = req.decoding.max_tokens;
    body["temperature"] = req.decoding.temperature;
    body["seed"] = req.decoding.seed;
    const std::string payload = body.dump();
    const std::string route = prefix + "/complete";

    const auto t0 = std::chrono::steady_clock::now();
    std::string last_error;
    for (int attempt = 0; attempt < 2; ++attempt) {
        httplib::Client client(host);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        httplib::Headers headers;
        if (!auth_token_.empty()) {
            headers.emplace("Authorization", "Bearer " + auth_token_);
        }
        auto res = client.Post(route, headers, payload, "application/json");
        if (!res) {
            last_error = "completion endpoint unreachable: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "completion endpoint returned status " + std::to_string(res->status);
            continue;
        }
        json reply;
        try {
            reply = json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw BackendError(std::string("completion reply is malformed JSON: ") + e.what());
        }
        if (!reply.contains("text") || !reply["text"].is_string()) {
            throw BackendError("completion reply is missing 'text'");
        }
        std::string text = reply["text"].get<std::string>();
        if (trim(text).empty()) {
            throw BackendError("completion endpoint returned an empty completion");
        }
        const auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return GenerationResponse{std::move(text), ms, tag()};
    }
    throw BackendError(last_error.empty() ? "completion endpoint failed" : last_error);
}

std::unique_ptr<GenerationBackend> make_generation_backend(const std::string& tag,
                                                           const std::string& base_url,
                                                           const std::string& auth_token,
                                                           int timeout_seconds) {
    if (tag == "stub") return std::make_unique<StubBackend>();
    if (tag == "http") {
        if (base_url.empty()) {
            throw ConfigError("http generation backend requires a completion url");
        }
        return std::make_unique<HttpCompletionBackend>(base_url, auth_token, timeout_seconds);
    }
    throw ConfigError("unknown generation backend: " + tag);
}

} // namespace kgex
