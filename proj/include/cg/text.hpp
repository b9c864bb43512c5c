#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cg {

// FNV-1a over raw bytes; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);

// Lowercase hex of the full 64-bit hash.
std::string hex64(std::uint64_t value);

// First 8 hex chars of fnv1a64, used for location body digests.
std::string short_digest(std::string_view bytes);

std::string to_lower(std::string_view text);

// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_whitespace(std::string_view text);

// Lowercase + whitespace collapse; the canonical surface form used for
// lexicon keys, probe commands and action-target matching.
std::string normalize_surface(std::string_view text);

struct Token {
    std::string surface;
    std::size_t start = 0;  // byte offset, inclusive
    std::size_t end = 0;    // byte offset, exclusive
};

// Word-and-punctuation tokenization with byte offsets. Words are maximal
// alphanumeric (plus apostrophe) runs; every other non-space byte is its
// own token.
std::vector<Token> tokenize(std::string_view text);

// Maximal alphabetic runs only, with a flag telling whether a token is
// adjacent to the previous one (separated by whitespace alone).
struct AlphaToken {
    std::string surface;
    std::size_t start = 0;
    std::size_t end = 0;
    bool adjacent_to_previous = false;
};
std::vector<AlphaToken> tokenize_alpha(std::string_view text);

// Builtin English function-word list (~120 entries), lowercase.
const std::unordered_set<std::string>& builtin_stopwords();

// One entry per line, '#' comments, blank lines ignored.
std::unordered_set<std::string> load_word_list(const std::string& path);

// Period/exclamation/question splitter with a small abbreviation guard.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace cg
