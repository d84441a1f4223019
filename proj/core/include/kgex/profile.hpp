#pragma once

#include <set>
#include <string>

#include "kgex/catalog.hpp"
#include "kgex/encoder.hpp"
#include "kgex/vec.hpp"

namespace kgex {

constexpr double kDefaultProxyThreshold = 0.4;

/// A user's positive historical feature set and the derived history intent
/// vector (mean of the features' encodings). The membership set and the
/// vector are independent fields: augmenting the set does not implicitly
/// move the vector.
struct PreferenceProfile {
    std::string user_id;
    std::set<std::string> hist_features;   // F_u^hist+
    Vec intent;                             // zero vector when no positive features
    double tau = kDefaultProxyThreshold;
};

/// A feature enters F_u^hist+ when its polarity-weighted score summed over
/// every mention in the user's history is positive.
PreferenceProfile build_profile(const UserHistory& history, const TextEncoder& encoder,
                                double tau = kDefaultProxyThreshold);

struct ProxyResult {
    double score = 0.0;   // cos(phi(f), h_u)
    bool valid = false;   // f in F_u^hist+ or score >= tau (closed threshold)
};

ProxyResult preference_proxy(const PreferenceProfile& profile, const std::string& feature,
                             const TextEncoder& encoder);

} // namespace kgex
