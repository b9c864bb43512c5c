#pragma once

#include "cg/corpus.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cg {

struct EvalReport {
    double token_accuracy = 0.0;
    double span_precision = 0.0;
    double span_recall = 0.0;
    double span_f1 = 0.0;
    struct Counts {
        std::size_t tp = 0;
        std::size_t fp = 0;
        std::size_t fn = 0;
        std::size_t tokens_correct = 0;
        std::size_t tokens_total = 0;
    } counts;
    std::vector<std::string> unmatched_keys;  // prediction keys with no gold record
};

struct SpanPredictions {
    std::string game_id;
    LocationKey location_key;
    std::vector<Span> spans;
};

// Drops the probabilities; keeps every span regardless of p.
std::vector<SpanPredictions> to_span_predictions(const std::vector<PredictionRecord>& records);

// Exact (start,end) span match, micro-averaged; token accuracy over BIO
// projections of gold vs predicted spans. Records without predictions
// count as empty prediction sets.
EvalReport span_metrics(const std::vector<CgifRecord>& gold,
                        const std::vector<SpanPredictions>& predicted);

struct NerEntity {
    Span span;
    std::string category;
};

struct NerAnnotation {
    std::string doc_id;
    std::vector<NerEntity> entities;
};

// JSON Lines: {"doc_id", "spans": [{"start","end","category"}]}
std::vector<NerAnnotation> read_ner_annotations(std::istream& in);
std::vector<NerAnnotation> read_ner_annotations_file(const std::string& path);

struct CategoryRatioRow {
    std::string category;
    std::size_t nu_cgr = 0;  // NER entities overlapping a CG span
    std::size_t nu_ner = 0;  // NER entities overlapping none
    double ratio = 0.0;      // nu_cgr / nu_ner, defined only when nu_ner > 0
};

struct RatioInput {
    std::vector<Span> cg_spans;
    std::vector<NerEntity> entities;
};

// Overlap = any byte intersection. Rows with nu_ner = 0 are excluded;
// sorted descending by ratio, truncated to top_k.
std::vector<CategoryRatioRow> category_ratios(const std::vector<RatioInput>& docs,
                                              std::size_t top_k = 5);

enum class OverlapMode { all_ats, unique_ats };

std::string to_string(OverlapMode mode);

struct SurfacePrediction {
    std::string normalized;
    double p = 0.0;
};

struct OverlapReport {
    double threshold = 0.0;
    // Fraction of labeled CG surfaces appearing in the AT list; empty
    // labeled set leaves this unset rather than reporting 0.
    std::optional<double> share_cgs_in_at;
    double share_ats_labeled = 0.0;
    OverlapMode mode = OverlapMode::all_ats;
};

// A surface is labeled at a threshold when its best p strictly exceeds it.
// Thresholds must be sorted ascending.
std::vector<OverlapReport> at_overlap(const std::vector<SurfacePrediction>& predictions,
                                      const std::vector<ActionTarget>& action_targets,
                                      const std::vector<double>& thresholds, OverlapMode mode);

// Maps a sentence to its CG spans; the baseline tagger or any external
// model can stand behind it.
using CgPredictor = std::function<std::vector<Span>(const std::string& sentence)>;

struct TurningPointProfile {
    std::array<double, 5> delta_cg_per_sentence{};
    std::array<double, 5> delta_words_per_sentence{};
    std::size_t stories_used = 0;
    std::size_t stories_skipped = 0;
};

// Per story, per turning point: CGs/sentence and words/sentence at the TP
// sentence minus the mean over the story's five TP sentences; averaged
// across stories.
TurningPointProfile turning_point_profile(const std::vector<TripodSynopsis>& synopses,
                                          const CgPredictor& predictor);

struct OccurrenceMatrix {
    // pct[i][j]: % of all CGs first occurring in TP i+1 that (re)occur in
    // TP j+1. Zero below the diagonal; the diagonal sums to 100 when any
    // CG exists.
    std::array<std::array<double, 5>, 5> pct{};
};

// CG identity across turning points = equal normalized surface within one
// story.
OccurrenceMatrix occurrence_matrix(const std::vector<TripodSynopsis>& synopses,
                                   const CgPredictor& predictor);

}  // namespace cg
