#pragma once

#include <set>
#include <string>
#include <vector>

namespace kgex {

enum class FeatureProvenance { Lexicon, Provided };

/// Features attributed to one explanation. Strings are normalized; the
/// provenance records whether they were matched by the lexicon or supplied
/// pre-extracted.
struct FeatureSet {
    std::set<std::string> features;
    FeatureProvenance provenance = FeatureProvenance::Lexicon;

    bool empty() const { return features.empty(); }
    size_t size() const { return features.size(); }
};

/// Case-folded whole-word matching of vocabulary entries against the text,
/// longest phrase first at each position; a matched phrase consumes its
/// words. "plotting" never matches "plot"; "plot twist" shadows "plot".
FeatureSet extract_features(const std::string& text,
                            const std::set<std::string>& vocabulary);

} // namespace kgex
