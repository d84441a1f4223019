#include "kgex/features.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "kgex/error.hpp"
#include "kgex/text.hpp"

namespace kgex {

namespace {

bool is_word_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || u >= 0x80 || c == '\'' || c == '-' || c == '_';
}

// Word tokens of the case-folded text. Punctuation and whitespace both end
// a word, so "plot, twist" tokenizes the same as "plot twist".
std::vector<std::string> word_tokens(const std::string& text) {
    std::string folded = casefold(text);
    std::vector<std::string> out;
    size_t i = 0;
    while (i < folded.size()) {
        while (i < folded.size() && !is_word_char(folded[i])) ++i;
        size_t b = i;
        while (i < folded.size() && is_word_char(folded[i])) ++i;
        if (i > b) out.push_back(folded.substr(b, i - b));
    }
    return out;
}

} // namespace

FeatureSet extract_features(const std::string& text,
                            const std::set<std::string>& vocabulary) {
    if (vocabulary.empty()) throw Error("feature vocabulary must be non-empty");

    // Vocabulary phrases indexed by first word, longest phrase first.
    std::map<std::string, std::vector<std::pair<std::vector<std::string>, std::string>>> index;
    for (const auto& entry : vocabulary) {
        std::string norm = normalize_feature(entry);
        if (norm.empty()) continue;
        auto words = phrase_words(norm);
        index[words.front()].emplace_back(std::move(words), norm);
    }
    for (auto& [first, phrases] : index) {
        std::stable_sort(phrases.begin(), phrases.end(),
                         [](const auto& a, const auto& b) {
                             return a.first.size() > b.first.size();
                         });
    }

    const auto tokens = word_tokens(text);
    FeatureSet out;
    size_t i = 0;
    while (i < tokens.size()) {
        auto it = index.find(tokens[i]);
        if (it == index.end()) {
            ++i;
            continue;
        }
        bool matched = false;
        for (const auto& [words, norm] : it->second) {
            if (i + words.size() > tokens.size()) continue;
            bool ok = true;
            for (size_t w = 0; w < words.size(); ++w) {
                if (tokens[i + w] != words[w]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.features.insert(norm);
                i += words.size();
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return out;
}

} // namespace kgex
