#pragma once

#include "cg/corpus.hpp"

#include <map>
#include <string>
#include <vector>

namespace cg {

// Lexicon/frequency baseline: how often a candidate surface was covered by
// a gold span in training.
struct Lexicon {
    struct Entry {
        std::size_t cg_count = 0;
        std::size_t total_count = 0;
    };
    std::map<std::string, Entry> table;  // normalized surface -> counts
    double alpha = 1.0;                  // additive smoothing

    std::string serialize() const;
    static Lexicon deserialize(const std::string& text);
    void save(const std::string& path) const;
    static Lexicon load(const std::string& path);
};

Lexicon train_lexicon(const std::vector<CgifRecord>& train, double alpha = 1.0);

// p = (cg + alpha) / (total + 2 alpha); unseen surfaces get the smoothed
// prior 0.5. Overlaps resolved longest-match-first.
std::vector<PredictionSpan> predict(const Lexicon& lexicon, const std::string& text);

// Strictly greater than p_min, order preserved.
std::vector<Span> apply_threshold(const std::vector<PredictionSpan>& predictions, double p_min);

}  // namespace cg
