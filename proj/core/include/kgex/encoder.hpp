#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kgex/embedding.hpp"
#include "kgex/path.hpp"
#include "kgex/vec.hpp"

namespace kgex {

/// Pluggable feature/text encoder phi(.). Implementations must be safe to
/// call concurrently.
class TextEncoder {
public:
    virtual ~TextEncoder() = default;
    virtual Vec encode(const std::string& text) const = 0;
    virtual std::vector<Vec> encode_batch(const std::vector<std::string>& texts) const;
    virtual size_t dim() const = 0;
    virtual std::string tag() const = 0;
};

/// Deterministic default: case-fold, whitespace-tokenize, hash each token
/// to a unit vector, take the mean and normalize. Order-invariant and
/// bitwise reproducible for equal (seed, dim, text).
class HashTextEncoder : public TextEncoder {
public:
    HashTextEncoder(std::uint64_t seed, size_t dim) : seed_(seed), dim_(dim) {}

    Vec encode(const std::string& text) const override;
    size_t dim() const override { return dim_; }
    std::string tag() const override { return "hash"; }

private:
    std::uint64_t seed_;
    size_t dim_;
};

/// Delegates to an external encoder endpoint:
///   POST <base_url>/encode  {"texts": [..]} -> {"vectors": [[..], ..]}
/// Failed calls are retried once, then surfaced as BackendError.
class HttpTextEncoder : public TextEncoder {
public:
    explicit HttpTextEncoder(std::string base_url, size_t expected_dim = 0,
                             int timeout_seconds = 30);

    Vec encode(const std::string& text) const override;
    std::vector<Vec> encode_batch(const std::vector<std::string>& texts) const override;
    size_t dim() const override { return dim_; }
    std::string tag() const override { return "http"; }

private:
    std::string base_url_;
    mutable size_t dim_;
    int timeout_seconds_;
};

/// Encoder matching a store's backend and seed, for feature vectors that
/// must live in the same space as the store's text encodings.
std::unique_ptr<TextEncoder> make_text_encoder(const EmbeddingStore& store,
                                               const std::string& encoder_url = "");

/// phi(text) under the store's configured backend. Empty text is an error.
Vec encode_text(const EmbeddingStore& store, const std::string& text);

/// Path vector h_p: normalized mean of the aggregated entity vectors and
/// the normalized relation vectors along the path. Sequence-agnostic by
/// construction (mean pooling).
Vec encode_path(const EmbeddingStore& store, const ReasoningPath& path);

} // namespace kgex
