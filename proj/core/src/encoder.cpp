#include "kgex/encoder.hpp"

#include <httplib.h>
#include <json.hpp>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

using nlohmann::json;

std::vector<Vec> TextEncoder::encode_batch(const std::vector<std::string>& texts) const {
    std::vector<Vec> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(encode(t));
    return out;
}

Vec HashTextEncoder::encode(const std::string& text) const {
    auto tokens = split_whitespace(casefold(text));
    if (tokens.empty()) throw Error("cannot encode empty text");
    Vec sum(dim_, 0.0);
    for (const auto& tok : tokens) {
        vec::add_inplace(sum, hash_unit_vector(tok, seed_, dim_));
    }
    vec::scale_inplace(sum, 1.0 / static_cast<double>(tokens.size()));
    vec::normalize(sum);
    return sum;
}

namespace {

// Splits "http://host:port/prefix" into client target and path prefix.
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, ""};
    return {url.substr(0, slash), url.substr(slash)};
}

} // namespace

HttpTextEncoder::HttpTextEncoder(std::string base_url, size_t expected_dim,
                                 int timeout_seconds)
    : base_url_(std::move(base_url)), dim_(expected_dim), timeout_seconds_(timeout_seconds) {}

std::vector<Vec> HttpTextEncoder::encode_batch(const std::vector<std::string>& texts) const {
    for (const auto& t : texts) {
        if (trim(t).empty()) throw Error("cannot encode empty text");
    }
    auto [host, prefix] = split_url(base_url_);
    json body;
    body["texts"] = texts;
    const std::string payload = body.dump();
    const std::string route = prefix + "/encode";

    std::string last_error;
    for (int attempt = 0; attempt < 2; ++attempt) {
        httplib::Client client(host);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        auto res = client.Post(route, payload, "application/json");
        if (!res) {
            last_error = "encoder endpoint unreachable: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "encoder endpoint returned status " + std::to_string(res->status);
            continue;
        }
        json reply;
        try {
            reply = json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw BackendError(std::string("encoder returned malformed JSON: ") + e.what());
        }
        if (!reply.contains("vectors") || !reply["vectors"].is_array() ||
            reply["vectors"].size() != texts.size()) {
            throw BackendError("encoder reply missing 'vectors' of matching length");
        }
        std::vector<Vec> out;
        out.reserve(texts.size());
        for (const auto& jv : reply["vectors"]) {
            Vec v = jv.get<Vec>();
            if (dim_ == 0) dim_ = v.size();
            if (v.size() != dim_) {
                throw BackendError("encoder vector dimension " + std::to_string(v.size()) +
                                   " does not match expected " + std::to_string(dim_));
            }
            out.push_back(std::move(v));
        }
        return out;
    }
    throw BackendError(last_error.empty() ? "encoder endpoint failed" : last_error);
}

Vec HttpTextEncoder::encode(const std::string& text) const {
    return encode_batch({text}).front();
}

std::unique_ptr<TextEncoder> make_text_encoder(const EmbeddingStore& store,
                                               const std::string& encoder_url) {
    if (store.backend() == EmbeddingBackend::HttpEncoder) {
        if (encoder_url.empty()) {
            throw ConfigError("http embedding backend requires an encoder url");
        }
        return std::make_unique<HttpTextEncoder>(encoder_url, store.dim());
    }
    return std::make_unique<HashTextEncoder>(store.seed(), store.dim());
}

Vec encode_text(const EmbeddingStore& store, const std::string& text) {
    if (trim(text).empty()) throw Error("cannot encode empty text");
    HashTextEncoder enc(store.seed(), store.dim());
    return enc.encode(text);
}

Vec encode_path(const EmbeddingStore& store, const ReasoningPath& path) {
    if (path.entities.empty() || path.entities.size() != path.relations.size() + 1) {
        throw Error("malformed reasoning path");
    }
    if (!store.has_aggregated()) throw Error("store has no aggregated vectors");
    Vec sum(store.dim(), 0.0);
    for (EntityId e : path.entities) {
        vec::add_inplace(sum, store.aggregated(e));
    }
    for (RelationId r : path.relations) {
        vec::add_inplace(sum, vec::normalized(store.base(r)));
    }
    const double count = static_cast<double>(path.entities.size() + path.relations.size());
    vec::scale_inplace(sum, 1.0 / count);
    vec::normalize(sum);
    return sum;
}

} // namespace kgex
