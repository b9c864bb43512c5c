#include "cg/eval.hpp"

#include "cg/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace cg {

std::vector<SpanPredictions> to_span_predictions(const std::vector<PredictionRecord>& records) {
    std::vector<SpanPredictions> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
        SpanPredictions sp{rec.game_id, rec.location_key, {}};
        for (const auto& s : rec.spans) sp.spans.push_back({s.start, s.end});
        out.push_back(std::move(sp));
    }
    return out;
}

namespace {

std::string record_key(const std::string& game_id, const LocationKey& key) {
    return game_id + "\x1f" + key_string(key);
}

// BIO tags over the record's tokens for an arbitrary span set.
std::vector<BioTag> project_tags(const CgifRecord& record, std::vector<Span> spans) {
    std::sort(spans.begin(), spans.end());
    CgifRecord tmp = record;
    tmp.spans.clear();
    std::size_t prev_end = 0;
    for (const auto& s : spans) {  // drop overlaps so validate() holds
        if (s.start >= prev_end && s.start < s.end && s.end <= record.text.size()) {
            tmp.spans.push_back(s);
            prev_end = s.end;
        }
    }
    return to_bio(tmp).tags;
}

}  // namespace

EvalReport span_metrics(const std::vector<CgifRecord>& gold,
                        const std::vector<SpanPredictions>& predicted) {
    std::map<std::string, std::vector<Span>> pred_by_key;
    std::set<std::string> gold_keys;
    for (const auto& g : gold) gold_keys.insert(record_key(g.game_id, g.location_key));

    EvalReport report;
    for (const auto& p : predicted) {
        std::string key = record_key(p.game_id, p.location_key);
        if (!gold_keys.count(key)) {
            report.unmatched_keys.push_back(p.game_id + "/" + key_string(p.location_key));
            continue;
        }
        auto& spans = pred_by_key[key];
        spans.insert(spans.end(), p.spans.begin(), p.spans.end());
    }

    for (const auto& g : gold) {
        validate(g);
        std::string key = record_key(g.game_id, g.location_key);
        std::vector<Span> pred_spans;
        auto it = pred_by_key.find(key);
        if (it != pred_by_key.end()) pred_spans = it->second;

        std::set<Span> gold_set(g.spans.begin(), g.spans.end());
        std::set<Span> pred_set(pred_spans.begin(), pred_spans.end());
        for (const auto& s : pred_set) {
            if (gold_set.count(s)) report.counts.tp++;
            else report.counts.fp++;
        }
        for (const auto& s : gold_set) {
            if (!pred_set.count(s)) report.counts.fn++;
        }

        std::vector<BioTag> gold_tags = to_bio(g).tags;
        std::vector<BioTag> pred_tags = project_tags(g, pred_spans);
        for (std::size_t i = 0; i < gold_tags.size(); ++i) {
            report.counts.tokens_total++;
            if (gold_tags[i] == pred_tags[i]) report.counts.tokens_correct++;
        }
    }

    const auto& c = report.counts;
    report.span_precision =
        c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    report.span_recall =
        c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    double pr = report.span_precision + report.span_recall;
    report.span_f1 = pr > 0.0 ? 2.0 * report.span_precision * report.span_recall / pr : 0.0;
    report.token_accuracy =
        c.tokens_total == 0
            ? 0.0
            : static_cast<double>(c.tokens_correct) / static_cast<double>(c.tokens_total);
    return report;
}

std::vector<NerAnnotation> read_ner_annotations(std::istream& in) {
    std::vector<NerAnnotation> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (collapse_whitespace(line).empty()) continue;
        try {
            json j = json::parse(line);
            NerAnnotation ann;
            ann.doc_id = j.at("doc_id").get<std::string>();
            for (const auto& s : j.at("spans")) {
                NerEntity e;
                e.span = {s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>()};
                e.category = s.at("category").get<std::string>();
                if (e.span.start >= e.span.end) throw std::runtime_error("bad NER span");
                ann.entities.push_back(std::move(e));
            }
            out.push_back(std::move(ann));
        } catch (const std::exception& e) {
            throw std::runtime_error("NER line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<NerAnnotation> read_ner_annotations_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open NER file: " + path);
    return read_ner_annotations(in);
}

std::vector<CategoryRatioRow> category_ratios(const std::vector<RatioInput>& docs,
                                              std::size_t top_k) {
    std::map<std::string, CategoryRatioRow> rows;
    for (const auto& doc : docs) {
        for (const auto& entity : doc.entities) {
            bool overlaps_cg = false;
            for (const auto& cg : doc.cg_spans) {
                if (entity.span.start < cg.end && cg.start < entity.span.end) {
                    overlaps_cg = true;
                    break;
                }
            }
            auto& row = rows[entity.category];
            row.category = entity.category;
            if (overlaps_cg) row.nu_cgr++;
            else row.nu_ner++;
        }
    }
    std::vector<CategoryRatioRow> out;
    for (auto& [category, row] : rows) {
        if (row.nu_ner == 0) continue;  // ratio undefined
        row.ratio = static_cast<double>(row.nu_cgr) / static_cast<double>(row.nu_ner);
        out.push_back(row);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        return a.category < b.category;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

std::string to_string(OverlapMode mode) {
    return mode == OverlapMode::all_ats ? "all" : "unique";
}

std::vector<OverlapReport> at_overlap(const std::vector<SurfacePrediction>& predictions,
                                      const std::vector<ActionTarget>& action_targets,
                                      const std::vector<double>& thresholds, OverlapMode mode) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw std::invalid_argument("thresholds must be sorted ascending");
    }
    // best p per surface: a surface is labeled iff its best p clears the bar
    std::map<std::string, double> best_p;
    for (const auto& pred : predictions) {
        auto [it, inserted] = best_p.try_emplace(pred.normalized, pred.p);
        if (!inserted) it->second = std::max(it->second, pred.p);
    }
    std::set<std::string> at_surfaces;
    std::size_t at_occurrences = 0;
    for (const auto& at : action_targets) {
        at_surfaces.insert(at.normalized);
        at_occurrences += at.count;
    }

    std::vector<OverlapReport> out;
    for (double threshold : thresholds) {
        OverlapReport report;
        report.threshold = threshold;
        report.mode = mode;
        std::set<std::string> labeled;
        for (const auto& [surface, p] : best_p) {
            if (p > threshold) labeled.insert(surface);
        }
        if (!labeled.empty()) {
            std::size_t in_at = 0;
            for (const auto& surface : labeled) {
                if (at_surfaces.count(surface)) ++in_at;
            }
            report.share_cgs_in_at =
                static_cast<double>(in_at) / static_cast<double>(labeled.size());
        }
        if (mode == OverlapMode::all_ats) {
            std::size_t covered = 0;
            for (const auto& at : action_targets) {
                if (labeled.count(at.normalized)) covered += at.count;
            }
            report.share_ats_labeled =
                at_occurrences == 0
                    ? 0.0
                    : static_cast<double>(covered) / static_cast<double>(at_occurrences);
        } else {
            std::size_t covered = 0;
            for (const auto& surface : at_surfaces) {
                if (labeled.count(surface)) ++covered;
            }
            report.share_ats_labeled =
                at_surfaces.empty()
                    ? 0.0
                    : static_cast<double>(covered) / static_cast<double>(at_surfaces.size());
        }
        out.push_back(report);
    }
    return out;
}

namespace {

bool valid_turning_points(const TripodSynopsis& story) {
    int prev = -1;
    for (int idx : story.turning_points) {
        if (idx <= prev || idx >= static_cast<int>(story.sentences.size())) return false;
        prev = idx;
    }
    return true;
}

std::size_t word_count(const std::string& sentence) {
    std::istringstream in(sentence);
    std::string word;
    std::size_t n = 0;
    while (in >> word) ++n;
    return n;
}

}  // namespace

TurningPointProfile turning_point_profile(const std::vector<TripodSynopsis>& synopses,
                                          const CgPredictor& predictor) {
    TurningPointProfile profile;
    for (const auto& story : synopses) {
        if (!valid_turning_points(story)) {
            profile.stories_skipped++;
            continue;
        }
        std::array<double, 5> cgs{}, words{};
        for (std::size_t t = 0; t < 5; ++t) {
            const std::string& sentence = story.sentences[story.turning_points[t]];
            cgs[t] = static_cast<double>(predictor(sentence).size());
            words[t] = static_cast<double>(word_count(sentence));
        }
        double cg_mean = (cgs[0] + cgs[1] + cgs[2] + cgs[3] + cgs[4]) / 5.0;
        double word_mean = (words[0] + words[1] + words[2] + words[3] + words[4]) / 5.0;
        for (std::size_t t = 0; t < 5; ++t) {
            profile.delta_cg_per_sentence[t] += cgs[t] - cg_mean;
            profile.delta_words_per_sentence[t] += words[t] - word_mean;
        }
        profile.stories_used++;
    }
    if (profile.stories_used > 0) {
        for (std::size_t t = 0; t < 5; ++t) {
            profile.delta_cg_per_sentence[t] /= static_cast<double>(profile.stories_used);
            profile.delta_words_per_sentence[t] /= static_cast<double>(profile.stories_used);
        }
    }
    return profile;
}

OccurrenceMatrix occurrence_matrix(const std::vector<TripodSynopsis>& synopses,
                                   const CgPredictor& predictor) {
    std::array<std::array<std::size_t, 5>, 5> counts{};
    for (const auto& story : synopses) {
        if (!valid_turning_points(story)) continue;
        std::array<std::set<std::string>, 5> surfaces;
        for (std::size_t t = 0; t < 5; ++t) {
            const std::string& sentence = story.sentences[story.turning_points[t]];
            for (const auto& span : predictor(sentence)) {
                if (span.start < span.end && span.end <= sentence.size()) {
                    surfaces[t].insert(
                        normalize_surface(sentence.substr(span.start, span.end - span.start)));
                }
            }
        }
        std::map<std::string, std::size_t> first_tp;
        for (std::size_t t = 0; t < 5; ++t) {
            for (const auto& surface : surfaces[t]) first_tp.try_emplace(surface, t);
        }
        for (const auto& [surface, first] : first_tp) {
            counts[first][first]++;
            for (std::size_t t = first + 1; t < 5; ++t) {
                if (surfaces[t].count(surface)) counts[first][t]++;
            }
        }
    }
    std::size_t total_first = 0;
    for (std::size_t i = 0; i < 5; ++i) total_first += counts[i][i];
    OccurrenceMatrix matrix;
    if (total_first > 0) {
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = i; j < 5; ++j) {
                matrix.pct[i][j] =
                    100.0 * static_cast<double>(counts[i][j]) / static_cast<double>(total_first);
            }
        }
    }
    return matrix;
}

}  // namespace cg
