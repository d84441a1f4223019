#include "kgex/profile.hpp"

#include <map>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

PreferenceProfile build_profile(const UserHistory& history, const TextEncoder& encoder,
                                double tau) {
    if (tau < 0.0 || tau > 1.0) throw ConfigError("proxy threshold tau must be in [0, 1]");

    PreferenceProfile profile;
    profile.user_id = history.user_id;
    profile.tau = tau;

    std::map<std::string, double> polarity_sum;
    for (const auto& item : history.items) {
        for (const auto& quad : item.features) {
            polarity_sum[quad.feature] += quad.polarity * quad.score;
        }
    }
    for (const auto& [feature, total] : polarity_sum) {
        if (total > 0.0) profile.hist_features.insert(feature);
    }

    profile.intent.assign(encoder.dim(), 0.0);
    if (!profile.hist_features.empty()) {
        for (const auto& f : profile.hist_features) {
            vec::add_inplace(profile.intent, encoder.encode(f));
        }
        vec::scale_inplace(profile.intent,
                           1.0 / static_cast<double>(profile.hist_features.size()));
    }
    return profile;
}

ProxyResult preference_proxy(const PreferenceProfile& profile, const std::string& feature,
                             const TextEncoder& encoder) {
    std::string norm = normalize_feature(feature);
    ProxyResult r;
    r.score = vec::cosine(encoder.encode(norm), profile.intent);
    r.valid = profile.hist_features.count(norm) > 0 || r.score >= profile.tau;
    return r;
}

} // namespace kgex
