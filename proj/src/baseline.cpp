#include "cg/baseline.hpp"

#include "cg/probe.hpp"
#include "cg/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace cg {

std::string Lexicon::serialize() const {
    json table = json::object();
    for (const auto& [surface, entry] : this->table) {
        table[surface] = json::array({entry.cg_count, entry.total_count});
    }
    json j{{"alpha", alpha}, {"table", table}};
    return j.dump() + "\n";
}

Lexicon Lexicon::deserialize(const std::string& text) {
    json j = json::parse(text);
    Lexicon lex;
    lex.alpha = j.at("alpha").get<double>();
    if (lex.alpha <= 0.0) throw std::runtime_error("lexicon alpha must be > 0");
    for (const auto& [surface, counts] : j.at("table").items()) {
        Entry entry{counts.at(0).get<std::size_t>(), counts.at(1).get<std::size_t>()};
        if (entry.cg_count > entry.total_count) {
            throw std::runtime_error("lexicon entry with cg_count > total_count: " + surface);
        }
        lex.table[surface] = entry;
    }
    return lex;
}

void Lexicon::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write lexicon: " + path);
    out << serialize();
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

Lexicon train_lexicon(const std::vector<CgifRecord>& train, double alpha) {
    if (train.empty()) throw std::runtime_error("cannot train a lexicon on an empty corpus");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be > 0");
    Lexicon lex;
    lex.alpha = alpha;
    for (const auto& rec : train) {
        validate(rec);
        for (const auto& cand : extract_candidates(rec.text)) {
            auto& entry = lex.table[cand.normalized];
            entry.total_count++;
            for (const auto& gold : rec.spans) {
                if (cand.start >= gold.start && cand.end <= gold.end) {
                    entry.cg_count++;
                    break;
                }
            }
        }
    }
    return lex;
}

std::vector<PredictionSpan> predict(const Lexicon& lexicon, const std::string& text) {
    if (text.empty()) return {};
    struct Scored {
        CandidateSpan candidate;
        double p;
    };
    std::vector<Scored> scored;
    for (auto& cand : extract_candidates(text)) {
        double p;
        auto it = lexicon.table.find(cand.normalized);
        if (it == lexicon.table.end()) {
            p = 0.5;  // smoothed prior for unseen surfaces
        } else {
            p = (static_cast<double>(it->second.cg_count) + lexicon.alpha) /
                (static_cast<double>(it->second.total_count) + 2.0 * lexicon.alpha);
        }
        scored.push_back({std::move(cand), p});
    }
    // longest match first, ties to the earliest start
    std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        std::size_t la = a.candidate.end - a.candidate.start;
        std::size_t lb = b.candidate.end - b.candidate.start;
        if (la != lb) return la > lb;
        return a.candidate.start < b.candidate.start;
    });
    std::vector<PredictionSpan> kept;
    for (const auto& s : scored) {
        bool overlaps = false;
        for (const auto& k : kept) {
            if (s.candidate.start < k.end && k.start < s.candidate.end) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) kept.push_back({s.candidate.start, s.candidate.end, s.p});
    }
    std::sort(kept.begin(), kept.end(),
              [](const PredictionSpan& a, const PredictionSpan& b) { return a.start < b.start; });
    return kept;
}

std::vector<Span> apply_threshold(const std::vector<PredictionSpan>& predictions, double p_min) {
    if (p_min < 0.0 || p_min > 1.0) throw std::invalid_argument("p_min must be in [0,1]");
    std::vector<Span> out;
    for (const auto& pred : predictions) {
        if (pred.p > p_min) out.push_back({pred.start, pred.end});
    }
    return out;
}

}  // namespace cg
