#include "cg/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace cg {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string short_digest(std::string_view bytes) {
    return hex64(fnv1a64(bytes)).substr(0, 8);
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_ws = true;  // leading whitespace dropped
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            out.push_back(static_cast<char>(c));
            in_ws = false;
        }
    }
    return out;
}

std::string normalize_surface(std::string_view text) {
    return to_lower(collapse_whitespace(text));
}

static bool word_char(unsigned char c) {
    return std::isalnum(c) || c == '\'';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (word_char(c)) {
            std::size_t j = i;
            while (j < text.size() && word_char(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({std::string(text.substr(i, j - i)), i, j});
            i = j;
        } else {
            out.push_back({std::string(text.substr(i, 1)), i, i + 1});
            ++i;
        }
    }
    return out;
}

std::vector<AlphaToken> tokenize_alpha(std::string_view text) {
    std::vector<AlphaToken> out;
    std::size_t i = 0;
    bool only_ws_since_last = false;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isalpha(c)) {
            std::size_t j = i;
            while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
            AlphaToken tok;
            tok.surface = std::string(text.substr(i, j - i));
            tok.start = i;
            tok.end = j;
            tok.adjacent_to_previous = only_ws_since_last && !out.empty();
            out.push_back(std::move(tok));
            only_ws_since_last = true;
            i = j;
        } else if (std::isspace(c)) {
            ++i;
        } else {
            only_ws_since_last = false;  // punctuation breaks adjacency
            ++i;
        }
    }
    return out;
}

const std::unordered_set<std::string>& builtin_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",       "about",  "above",  "after",   "again",   "against", "all",
        "am",      "an",     "and",    "any",     "are",     "as",      "at",
        "be",      "because","been",   "before",  "being",   "below",   "between",
        "both",    "but",    "by",     "can",     "cannot",  "could",   "did",
        "do",      "does",   "doing",  "down",    "during",  "each",    "few",
        "for",     "from",   "further","had",     "has",     "have",    "having",
        "he",      "her",    "here",   "hers",    "herself", "him",     "himself",
        "his",     "how",    "i",      "if",      "in",      "into",    "is",
        "it",      "its",    "itself", "just",    "me",      "more",    "most",
        "my",      "myself", "no",     "nor",     "not",     "now",     "of",
        "off",     "on",     "once",   "only",    "or",      "other",   "our",
        "ours",    "ourselves","out",  "over",    "own",     "same",    "she",
        "should",  "so",     "some",   "such",    "than",    "that",    "the",
        "their",   "theirs", "them",   "themselves","then",  "there",   "these",
        "they",    "this",   "those",  "through", "to",      "too",     "under",
        "until",   "up",     "upon",   "very",    "was",     "we",      "were",
        "what",    "when",   "where",  "which",   "while",   "who",     "whom",
        "why",     "will",   "with",   "would",   "you",     "your",    "yours",
        "yourself","yourselves","see", "seems",   "also",    "yet",
        "one",     "two",    "three",
    };
    return words;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open word list: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string entry = collapse_whitespace(line);
        if (entry.empty() || entry[0] == '#') continue;
        out.insert(to_lower(entry));
    }
    return out;
}

static bool ends_with_abbreviation(std::string_view prefix) {
    static const std::vector<std::string> abbrevs = {
        "mr", "mrs", "ms", "dr", "st", "prof", "sr", "jr", "vs", "etc", "e.g", "i.e",
    };
    std::size_t end = prefix.size();
    std::size_t begin = end;
    while (begin > 0) {
        unsigned char c = prefix[begin - 1];
        if (std::isalpha(c) || c == '.') --begin;
        else break;
    }
    std::string last = to_lower(prefix.substr(begin, end - begin));
    for (const auto& a : abbrevs) {
        if (last == a) return true;
    }
    // single capital letter initials like "J."
    return last.size() == 1 && std::isalpha(static_cast<unsigned char>(last[0]));
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            if (c == '.' && ends_with_abbreviation(text.substr(begin, i - begin))) continue;
            // swallow trailing punctuation/quotes
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (text[j] == '.' || text[j] == '!' || text[j] == '?' ||
                    text[j] == '"' || text[j] == '\''))
                ++j;
            std::string sentence = collapse_whitespace(text.substr(begin, j - begin));
            if (!sentence.empty()) out.push_back(std::move(sentence));
            begin = j;
            i = j - 1;
        }
    }
    std::string tail = collapse_whitespace(text.substr(begin));
    if (!tail.empty()) out.push_back(std::move(tail));
    return out;
}

}  // namespace cg
