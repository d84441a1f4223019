#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace kgex {

struct DecodingParams {
    int max_tokens = 256;
    double temperature = 0.0;   // deterministic decoding by default
    std::uint64_t seed = 42;
};

struct GenerationRequest {
    std::string prompt;
    DecodingParams decoding;
};

struct GenerationResponse {
    std::string text;
    double latency_ms = 0.0;
    std::string backend;
};

class GenerationBackend {
public:
    virtual ~GenerationBackend() = default;
    virtual GenerationResponse generate(const GenerationRequest& req) const = 0;
    virtual std::string tag() const = 0;
};

/// Model-free deterministic backend. Parses the prompt's Evidence section
/// and emits one sentence that mentions exactly the attribute entities of
/// the EXPLICIT and IMPLICIT evidence lines (the entity adjacent to the
/// target on each such path). With no evidence it emits a fixed generic
/// sentence that contains no extractable features. Equal prompts yield
/// equal text, which makes end-to-end metric runs reproducible without a
/// model.
class StubBackend : public GenerationBackend {
public:
    GenerationResponse generate(const GenerationRequest& req) const override;
    std::string tag() const override { return "stub"; }
};

/// POSTs {"prompt", "max_tokens", "temperature", "seed"} to
/// <base_url>/complete and expects {"text": ".."}. One retry, then
/// BackendError. An auth token, when set, is sent as a bearer header.
class HttpCompletionBackend : public GenerationBackend {
public:
    explicit HttpCompletionBackend(std::string base_url, std::string auth_token = "",
                                   int timeout_seconds = 30);
    GenerationResponse generate(const GenerationRequest& req) const override;
    std::string tag() const override { return "http"; }

private:
    std::string base_url_;
    std::string auth_token_;
    int timeout_seconds_;
};

std::unique_ptr<GenerationBackend> make_generation_backend(const std::string& tag,
                                                           const std::string& base_url,
                                                           const std::string& auth_token,
                                                           int timeout_seconds);

} // namespace kgex
