#include "cg/probe.hpp"

#include "cg/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace cg {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::trivial: return "trivial";
        case Verdict::nontrivial: return "nontrivial";
        case Verdict::error: return "error";
    }
    return "error";
}

TrivialityPatternSet TrivialityPatternSet::builtin() {
    return {{
                "can't see any such thing",
                "see nothing special",
                "not something you need to refer to",
                "don't know the word",
                "not a verb i recognise",
                "that's not a verb",
                "you can't do that",
            },
            "builtin"};
}

TrivialityPatternSet TrivialityPatternSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    TrivialityPatternSet set;
    set.source = path;
    std::string line;
    while (std::getline(in, line)) {
        std::string entry = collapse_whitespace(line);
        if (entry.empty() || entry[0] == '#') continue;
        set.patterns.push_back(to_lower(entry));
    }
    if (set.patterns.empty()) throw std::runtime_error("pattern file is empty: " + path);
    return set;
}

namespace {

// All candidate n-grams, without deduplication: for each maximal run of
// consecutive non-stopword alphabetic tokens, every window of length
// min(3, run length) plus every unigram of multi-token runs.
std::vector<CandidateSpan> candidate_ngrams(const std::string& description,
                                            const std::unordered_set<std::string>& stopwords) {
    std::vector<AlphaToken> tokens = tokenize_alpha(description);
    std::vector<CandidateSpan> out;
    auto make = [&](std::size_t start, std::size_t end) {
        CandidateSpan c;
        c.start = start;
        c.end = end;
        c.surface = description.substr(start, end - start);
        c.normalized = normalize_surface(c.surface);
        out.push_back(std::move(c));
    };
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (stopwords.count(to_lower(tokens[i].surface))) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < tokens.size() && tokens[j].adjacent_to_previous &&
               !stopwords.count(to_lower(tokens[j].surface)))
            ++j;
        std::size_t len = j - i;
        std::size_t gram = std::min<std::size_t>(3, len);
        for (std::size_t k = i; k + gram <= j; ++k) make(tokens[k].start, tokens[k + gram - 1].end);
        if (len > 1) {
            for (std::size_t k = i; k < j; ++k) make(tokens[k].start, tokens[k].end);
        }
        i = j;
    }
    return out;
}

}  // namespace

std::vector<CandidateSpan> extract_candidates(const std::string& description,
                                              const std::unordered_set<std::string>& stopwords) {
    if (description.empty()) throw std::invalid_argument("description must be non-empty");
    std::vector<CandidateSpan> all = candidate_ngrams(description, stopwords);
    std::stable_sort(all.begin(), all.end(),
                     [](const CandidateSpan& a, const CandidateSpan& b) {
                         if (a.start != b.start) return a.start < b.start;
                         return a.end > b.end;
                     });
    std::vector<CandidateSpan> out;
    std::unordered_set<std::string> seen;
    for (auto& c : all) {
        if (seen.insert(c.normalized).second) out.push_back(std::move(c));
    }
    return out;
}

Verdict classify_triviality(const std::string& response, const TrivialityPatternSet& patterns) {
    std::string collapsed = collapse_whitespace(response);
    if (collapsed.empty()) return Verdict::trivial;
    std::string low = to_lower(response);
    for (const auto& pat : patterns.patterns) {
        if (low.find(to_lower(pat)) != std::string::npos) return Verdict::trivial;
    }
    return Verdict::nontrivial;
}

ProbeResult probe_candidate(Session& session, const LocationRecord& record,
                            const CandidateSpan& candidate,
                            const TrivialityPatternSet& patterns) {
    ProbeResult result;
    result.candidate = candidate;
    result.command = "examine " + candidate.normalized;
    try {
        session.reset_and_replay(record.prefix);
        EngineResponse resp = session.send_command(result.command);
        result.response = resp.raw_text;
        result.verdict = classify_triviality(resp.raw_text, patterns);
    } catch (const SessionError& e) {
        result.verdict = Verdict::error;
        result.error_message = e.what();
    }
    return result;
}

AnnotatedLocation label_location(Session& session, const LocationRecord& record,
                                 const TrivialityPatternSet& patterns,
                                 const std::unordered_set<std::string>& stopwords) {
    AnnotatedLocation out;
    out.record = record;
    std::unordered_set<std::string> winners;
    for (const auto& candidate : extract_candidates(record.description, stopwords)) {
        ProbeResult result = probe_candidate(session, record, candidate, patterns);
        if (result.verdict == Verdict::nontrivial) winners.insert(candidate.normalized);
        out.evidence.push_back(std::move(result));
    }

    // Project winners to every occurrence, then keep a non-overlapping set,
    // longest match first, ties to the earliest start.
    std::vector<CandidateSpan> occurrences;
    for (auto& c : candidate_ngrams(record.description, stopwords)) {
        if (winners.count(c.normalized)) occurrences.push_back(std::move(c));
    }
    std::stable_sort(occurrences.begin(), occurrences.end(),
                     [](const CandidateSpan& a, const CandidateSpan& b) {
                         std::size_t la = a.end - a.start, lb = b.end - b.start;
                         if (la != lb) return la > lb;
                         return a.start < b.start;
                     });
    std::vector<Span> kept;
    for (const auto& c : occurrences) {
        bool overlaps = false;
        for (const auto& s : kept) {
            if (c.start < s.end && s.start < c.end) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) kept.push_back({c.start, c.end});
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    out.spans = std::move(kept);
    return out;
}

}  // namespace cg
