#pragma once

#include "cg/explorer.hpp"
#include "cg/text.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace cg {

struct CandidateSpan {
    std::size_t start = 0;   // byte offsets into the description
    std::size_t end = 0;     // exclusive
    std::string surface;     // exact substring description[start..end)
    std::string normalized;  // lowercased, whitespace collapsed
};

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
    friend auto operator<=>(const Span&, const Span&) = default;
};

enum class Verdict { trivial, nontrivial, error };

std::string to_string(Verdict v);

struct TrivialityPatternSet {
    std::vector<std::string> patterns;  // matched case-insensitively as substrings
    std::string source;                 // file path or "builtin"

    static TrivialityPatternSet builtin();
    // One pattern per line, '#' comments.
    static TrivialityPatternSet load(const std::string& path);
};

struct ProbeResult {
    CandidateSpan candidate;
    std::string command;   // the probe text sent
    std::string response;  // raw engine output
    Verdict verdict = Verdict::trivial;
    std::string error_message;  // set when verdict == error
};

struct AnnotatedLocation {
    LocationRecord record;
    std::vector<Span> spans;            // sorted, non-overlapping
    std::vector<ProbeResult> evidence;  // every probe, kept for audit
};

// Stopword-filtered 1-3-token alphabetic n-grams plus the unigrams inside
// multi-token runs; deduplicated by normalized form keeping the earliest
// occurrence.
std::vector<CandidateSpan> extract_candidates(
    const std::string& description,
    const std::unordered_set<std::string>& stopwords = builtin_stopwords());

// Trivial iff the response is empty/whitespace or contains any pattern
// case-insensitively. Pure.
Verdict classify_triviality(const std::string& response, const TrivialityPatternSet& patterns);

// reset_and_replay(record.prefix), then `examine <normalized surface>`.
// Session errors surface as verdict=error, never as exceptions.
ProbeResult probe_candidate(Session& session, const LocationRecord& record,
                            const CandidateSpan& candidate,
                            const TrivialityPatternSet& patterns);

// Probes every candidate with a fresh reset, projects winning surfaces to
// all of their occurrences, and de-overlaps longest-match-first.
AnnotatedLocation label_location(
    Session& session, const LocationRecord& record, const TrivialityPatternSet& patterns,
    const std::unordered_set<std::string>& stopwords = builtin_stopwords());

}  // namespace cg
