#pragma once

#include "cg/explorer.hpp"
#include "cg/probe.hpp"
#include "cg/text.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cg {

struct CgifRecord {
    std::string game_id;
    LocationKey location_key;
    std::string text;
    std::vector<Span> spans;  // sorted, non-overlapping, within text bounds
    DiscoveredBy discovered_by = DiscoveredBy::walkthrough;
    std::string pipeline_version;
};

// Throws std::runtime_error on invariant violations.
void validate(const CgifRecord& record);

CgifRecord to_cgif_record(const AnnotatedLocation& annotated, const std::string& pipeline_version);

// JSON Lines, one record per line, UTF-8. read ∘ write is the identity.
void write_cgif(std::ostream& out, const std::vector<CgifRecord>& records);
std::string write_cgif(const std::vector<CgifRecord>& records);
// Rejects malformed lines with their line number.
std::vector<CgifRecord> read_cgif(std::istream& in);
std::vector<CgifRecord> read_cgif_file(const std::string& path);
void write_cgif_file(const std::string& path, const std::vector<CgifRecord>& records);

// Location manifest: JSON Lines, one LocationRecord per line.
void write_locations(std::ostream& out, const std::vector<LocationRecord>& records);
std::vector<LocationRecord> read_locations(std::istream& in);
std::vector<LocationRecord> read_locations_file(const std::string& path);
void write_locations_file(const std::string& path, const std::vector<LocationRecord>& records);

enum class BioTag { B, I, O };

struct BioDocument {
    std::vector<Token> tokens;
    std::vector<BioTag> tags;  // parallel to tokens
};

// Whitespace/punctuation tokenization; tokens fully inside a span get
// B (first) / I (rest).
BioDocument to_bio(const CgifRecord& record);
// Spans snapped to token boundaries.
std::vector<Span> from_bio(const BioDocument& doc);
// CoNLL-style two-column export, blank line between documents.
std::string export_conll(const std::vector<BioDocument>& docs);

// Game-granular deterministic split; ratios positive and summing to 1.
std::vector<std::vector<CgifRecord>> split_corpus(const std::vector<CgifRecord>& records,
                                                  const std::vector<double>& ratios,
                                                  std::uint64_t seed);

struct ClubFloydPair {
    std::string observation;
    std::string action;
    std::string next_observation;
    std::string next_action;
};

struct ClubFloydParse {
    std::vector<ClubFloydPair> pairs;
    std::size_t skipped = 0;  // malformed groups
};

// [CLS] observation [SEP] action [SEP] next observation [SEP] next action [SEP]
ClubFloydParse parse_clubfloyd(const std::string& raw);
ClubFloydParse parse_clubfloyd(std::istream& in);

struct ActionTarget {
    std::string surface;     // as seen after the verb, first occurrence
    std::string normalized;
    std::size_t count = 0;   // occurrences across transcripts
};

// Strips the leading verb token of every action; the remainder is the AT.
// Bare-verb actions yield none. Ordered by first appearance.
std::vector<ActionTarget> extract_action_targets(const std::vector<ClubFloydPair>& pairs);

struct TripodSynopsis {
    std::string story_id;
    std::vector<std::string> sentences;
    std::array<int, 5> turning_points{};  // strictly increasing sentence indices
};

struct TripodParse {
    std::vector<TripodSynopsis> stories;
    std::vector<std::string> rejected;  // story ids that failed validation
};

// JSON Lines: {"story_id", "sentences": [...], "turning_points": [5 ints]}
TripodParse parse_tripod(std::istream& in);
TripodParse parse_tripod_file(const std::string& path);

struct CorpusStats {
    std::size_t locations = 0;
    std::size_t games = 0;
    std::size_t bytes = 0;  // serialized corpus size
    std::size_t spans = 0;
    double spans_per_location = 0.0;
};

CorpusStats corpus_stats(const std::vector<CgifRecord>& records);

// Prediction interchange: how external models inject span predictions.
struct PredictionSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    double p = 0.0;  // CG probability
};

struct PredictionRecord {
    std::string game_id;
    LocationKey location_key;
    std::vector<PredictionSpan> spans;
};

void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records);
std::vector<PredictionRecord> read_predictions(std::istream& in);
std::vector<PredictionRecord> read_predictions_file(const std::string& path);

}  // namespace cg
