#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgex {

/// Case-fold a UTF-8 string. ASCII letters are lowered in place; bytes
/// outside ASCII pass through untouched.
std::string casefold(std::string_view s);

/// Strip leading/trailing whitespace.
std::string_view trim(std::string_view s);

/// Canonical feature form: case-fold + trim + collapse internal runs of
/// whitespace to single spaces. All feature-set membership tests go
/// through this.
std::string normalize_feature(std::string_view s);

/// Split on runs of whitespace. Tokens are returned as-is (no folding).
std::vector<std::string> split_whitespace(std::string_view s);

/// Split a normalized phrase into its space-separated words.
std::vector<std::string> phrase_words(std::string_view normalized);

} // namespace kgex
