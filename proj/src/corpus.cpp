#include "cg/corpus.hpp"

#include "cg/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace cg {

void validate(const CgifRecord& record) {
    if (record.game_id.empty()) throw std::runtime_error("CgifRecord: empty game_id");
    if (record.text.empty()) throw std::runtime_error("CgifRecord: empty text");
    std::size_t prev_end = 0;
    for (const auto& span : record.spans) {
        if (span.start >= span.end || span.end > record.text.size()) {
            throw std::runtime_error("CgifRecord: span out of bounds");
        }
        if (span.start < prev_end) {
            throw std::runtime_error("CgifRecord: spans overlapping or unsorted");
        }
        prev_end = span.end;
    }
}

CgifRecord to_cgif_record(const AnnotatedLocation& annotated,
                          const std::string& pipeline_version) {
    CgifRecord rec;
    rec.game_id = annotated.record.game_id;
    rec.location_key = annotated.record.location;
    rec.text = annotated.record.description;
    rec.spans = annotated.spans;
    rec.discovered_by = annotated.record.discovered_by;
    rec.pipeline_version = pipeline_version;
    validate(rec);
    return rec;
}

namespace {

json key_to_json(const LocationKey& key) {
    return json{{"room_name", key.room_name}, {"body_digest", key.body_digest}};
}

LocationKey key_from_json(const json& j) {
    return {j.at("room_name").get<std::string>(), j.at("body_digest").get<std::string>()};
}

}  // namespace

void write_cgif(std::ostream& out, const std::vector<CgifRecord>& records) {
    for (const auto& rec : records) {
        validate(rec);
        json spans = json::array();
        for (const auto& s : rec.spans) spans.push_back(json::array({s.start, s.end}));
        json line{
            {"game_id", rec.game_id},
            {"location_key", key_to_json(rec.location_key)},
            {"text", rec.text},
            {"spans", spans},
            {"discovered_by", to_string(rec.discovered_by)},
            {"pipeline_version", rec.pipeline_version},
        };
        out << line.dump() << "\n";
    }
}

std::string write_cgif(const std::vector<CgifRecord>& records) {
    std::ostringstream out;
    write_cgif(out, records);
    return out.str();
}

std::vector<CgifRecord> read_cgif(std::istream& in) {
    std::vector<CgifRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (collapse_whitespace(line).empty()) continue;
        try {
            json j = json::parse(line);
            CgifRecord rec;
            rec.game_id = j.at("game_id").get<std::string>();
            rec.location_key = key_from_json(j.at("location_key"));
            rec.text = j.at("text").get<std::string>();
            for (const auto& s : j.at("spans")) {
                rec.spans.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
            }
            rec.discovered_by =
                discovered_by_from_string(j.at("discovered_by").get<std::string>());
            rec.pipeline_version = j.value("pipeline_version", "");
            validate(rec);
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw std::runtime_error("CGIF line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<CgifRecord> read_cgif_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CGIF file: " + path);
    return read_cgif(in);
}

void write_cgif_file(const std::string& path, const std::vector<CgifRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CGIF file: " + path);
    write_cgif(out, records);
}

void write_locations(std::ostream& out, const std::vector<LocationRecord>& records) {
    for (const auto& rec : records) {
        json line{
            {"game_id", rec.game_id},
            {"location", key_to_json(rec.location)},
            {"description", rec.description},
            {"prefix", rec.prefix},
            {"discovered_by", to_string(rec.discovered_by)},
        };
        out << line.dump() << "\n";
    }
}

std::vector<LocationRecord> read_locations(std::istream& in) {
    std::vector<LocationRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (collapse_whitespace(line).empty()) continue;
        try {
            json j = json::parse(line);
            LocationRecord rec;
            rec.game_id = j.at("game_id").get<std::string>();
            rec.location = key_from_json(j.at("location"));
            rec.description = j.at("description").get<std::string>();
            for (const auto& cmd : j.at("prefix")) rec.prefix.push_back(cmd.get<std::string>());
            rec.discovered_by =
                discovered_by_from_string(j.at("discovered_by").get<std::string>());
            if (rec.description.empty()) throw std::runtime_error("empty description");
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw std::runtime_error("location line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<LocationRecord> read_locations_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open location manifest: " + path);
    return read_locations(in);
}

void write_locations_file(const std::string& path, const std::vector<LocationRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write location manifest: " + path);
    write_locations(out, records);
}

BioDocument to_bio(const CgifRecord& record) {
    validate(record);
    BioDocument doc;
    doc.tokens = tokenize(record.text);
    doc.tags.assign(doc.tokens.size(), BioTag::O);
    for (const auto& span : record.spans) {
        bool first = true;
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (doc.tokens[i].start >= span.start && doc.tokens[i].end <= span.end) {
                doc.tags[i] = first ? BioTag::B : BioTag::I;
                first = false;
            }
        }
    }
    return doc;
}

std::vector<Span> from_bio(const BioDocument& doc) {
    if (doc.tokens.size() != doc.tags.size()) {
        throw std::runtime_error("BioDocument: tags/tokens length mismatch");
    }
    std::vector<Span> spans;
    for (std::size_t i = 0; i < doc.tags.size(); ++i) {
        if (doc.tags[i] == BioTag::O) continue;
        // an orphan I opens a span like a B would
        std::size_t j = i;
        while (j + 1 < doc.tags.size() && doc.tags[j + 1] == BioTag::I) ++j;
        spans.push_back({doc.tokens[i].start, doc.tokens[j].end});
        i = j;
    }
    return spans;
}

std::string export_conll(const std::vector<BioDocument>& docs) {
    std::ostringstream out;
    bool first_doc = true;
    for (const auto& doc : docs) {
        if (!first_doc) out << "\n";
        first_doc = false;
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            const char* tag = doc.tags[i] == BioTag::B ? "B"
                              : doc.tags[i] == BioTag::I ? "I" : "O";
            out << doc.tokens[i].surface << "\t" << tag << "\n";
        }
    }
    return out.str();
}

std::vector<std::vector<CgifRecord>> split_corpus(const std::vector<CgifRecord>& records,
                                                  const std::vector<double>& ratios,
                                                  std::uint64_t seed) {
    double sum = std::accumulate(ratios.begin(), ratios.end(), 0.0);
    if (ratios.empty() || std::abs(sum - 1.0) > 1e-9 ||
        std::any_of(ratios.begin(), ratios.end(), [](double r) { return r <= 0.0; })) {
        throw std::invalid_argument("split ratios must be positive and sum to 1");
    }
    // games in first-seen order, then a seeded shuffle
    std::vector<std::string> games;
    std::map<std::string, std::vector<std::size_t>> by_game;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto [it, inserted] = by_game.try_emplace(records[i].game_id);
        if (inserted) games.push_back(records[i].game_id);
        it->second.push_back(i);
    }
    if (games.size() < ratios.size()) {
        throw std::runtime_error("fewer games than split buckets");
    }
    std::mt19937_64 rng(seed);
    std::shuffle(games.begin(), games.end(), rng);

    std::size_t n = games.size();
    std::vector<std::size_t> quota(ratios.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t b = 0; b < ratios.size(); ++b) {
        double exact = ratios[b] * static_cast<double>(n);
        quota[b] = static_cast<std::size_t>(exact);
        assigned += quota[b];
        remainders.push_back({exact - static_cast<double>(quota[b]), b});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) {
        quota[remainders[i % remainders.size()].second]++;
    }
    // every bucket gets at least one game
    for (std::size_t b = 0; b < quota.size(); ++b) {
        while (quota[b] == 0) {
            auto big = std::max_element(quota.begin(), quota.end());
            --*big;
            ++quota[b];
        }
    }

    std::vector<std::vector<CgifRecord>> buckets(ratios.size());
    std::size_t g = 0;
    for (std::size_t b = 0; b < quota.size(); ++b) {
        std::vector<std::string> bucket_games(games.begin() + g, games.begin() + g + quota[b]);
        g += quota[b];
        // keep corpus order inside a bucket
        std::vector<std::size_t> idx;
        for (const auto& game : bucket_games) {
            const auto& v = by_game.at(game);
            idx.insert(idx.end(), v.begin(), v.end());
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t i : idx) buckets[b].push_back(records[i]);
    }
    return buckets;
}

ClubFloydParse parse_clubfloyd(const std::string& raw) {
    static const std::string cls = "[CLS]";
    static const std::string sep = "[SEP]";
    ClubFloydParse out;
    std::size_t pos = raw.find(cls);
    while (pos != std::string::npos) {
        std::size_t cur = pos + cls.size();
        std::array<std::string, 4> fields;
        bool ok = true;
        for (int k = 0; k < 4 && ok; ++k) {
            std::size_t next_sep = raw.find(sep, cur);
            std::size_t next_cls = raw.find(cls, cur);
            if (next_sep == std::string::npos ||
                (next_cls != std::string::npos && next_cls < next_sep)) {
                ok = false;
                pos = next_cls;
                break;
            }
            fields[k] = collapse_whitespace(raw.substr(cur, next_sep - cur));
            cur = next_sep + sep.size();
        }
        if (!ok) {
            ++out.skipped;
            continue;
        }
        if (fields[0].empty() || fields[1].empty()) {
            ++out.skipped;
        } else {
            out.pairs.push_back({fields[0], fields[1], fields[2], fields[3]});
        }
        pos = raw.find(cls, cur);
    }
    return out;
}

ClubFloydParse parse_clubfloyd(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_clubfloyd(buf.str());
}

std::vector<ActionTarget> extract_action_targets(const std::vector<ClubFloydPair>& pairs) {
    std::vector<ActionTarget> out;
    std::map<std::string, std::size_t> index;
    for (const auto& pair : pairs) {
        std::string action = collapse_whitespace(pair.action);
        std::size_t space = action.find(' ');
        if (space == std::string::npos) continue;  // bare verb
        std::string surface = action.substr(space + 1);
        std::string normalized = normalize_surface(surface);
        if (normalized.empty()) continue;
        auto it = index.find(normalized);
        if (it == index.end()) {
            index.emplace(normalized, out.size());
            out.push_back({surface, normalized, 1});
        } else {
            out[it->second].count++;
        }
    }
    return out;
}

TripodParse parse_tripod(std::istream& in) {
    TripodParse out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (collapse_whitespace(line).empty()) continue;
        std::string story_id = "<line " + std::to_string(line_no) + ">";
        try {
            json j = json::parse(line);
            TripodSynopsis story;
            story.story_id = j.at("story_id").get<std::string>();
            story_id = story.story_id;
            for (const auto& s : j.at("sentences")) story.sentences.push_back(s.get<std::string>());
            const auto& tps = j.at("turning_points");
            if (tps.size() != 5) throw std::runtime_error("need exactly 5 turning points");
            int prev = -1;
            for (std::size_t k = 0; k < 5; ++k) {
                int idx = tps.at(k).get<int>();
                if (idx <= prev) throw std::runtime_error("turning points not strictly increasing");
                if (idx < 0 || idx >= static_cast<int>(story.sentences.size())) {
                    throw std::runtime_error("turning point index out of range");
                }
                story.turning_points[k] = idx;
                prev = idx;
            }
            out.stories.push_back(std::move(story));
        } catch (const std::exception&) {
            out.rejected.push_back(story_id);
        }
    }
    return out;
}

TripodParse parse_tripod_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open TRIPOD file: " + path);
    return parse_tripod(in);
}

CorpusStats corpus_stats(const std::vector<CgifRecord>& records) {
    CorpusStats stats;
    stats.locations = records.size();
    std::unordered_set<std::string> games;
    for (const auto& rec : records) {
        games.insert(rec.game_id);
        stats.spans += rec.spans.size();
    }
    stats.games = games.size();
    stats.bytes = write_cgif(records).size();
    stats.spans_per_location =
        records.empty() ? 0.0
                        : static_cast<double>(stats.spans) / static_cast<double>(records.size());
    return stats;
}

void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records) {
    for (const auto& rec : records) {
        json spans = json::array();
        for (const auto& s : rec.spans) {
            if (s.p < 0.0 || s.p > 1.0) throw std::runtime_error("prediction p out of [0,1]");
            spans.push_back(json{{"start", s.start}, {"end", s.end}, {"p", s.p}});
        }
        json line{
            {"game_id", rec.game_id},
            {"location_key", key_to_json(rec.location_key)},
            {"spans", spans},
        };
        out << line.dump() << "\n";
    }
}

std::vector<PredictionRecord> read_predictions(std::istream& in) {
    std::vector<PredictionRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (collapse_whitespace(line).empty()) continue;
        try {
            json j = json::parse(line);
            PredictionRecord rec;
            rec.game_id = j.at("game_id").get<std::string>();
            rec.location_key = key_from_json(j.at("location_key"));
            for (const auto& s : j.at("spans")) {
                PredictionSpan span{s.at("start").get<std::size_t>(),
                                    s.at("end").get<std::size_t>(), s.at("p").get<double>()};
                if (span.p < 0.0 || span.p > 1.0 || span.start >= span.end) {
                    throw std::runtime_error("bad prediction span");
                }
                rec.spans.push_back(span);
            }
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw std::runtime_error("prediction line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return records;
}

std::vector<PredictionRecord> read_predictions_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open predictions file: " + path);
    return read_predictions(in);
}

}  // namespace cg
