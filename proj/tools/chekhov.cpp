#include "cg/baseline.hpp"
#include "cg/corpus.hpp"
#include "cg/engine.hpp"
#include "cg/eval.hpp"
#include "cg/explorer.hpp"
#include "cg/manifest.hpp"
#include "cg/probe.hpp"
#include "cg/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kPipelineVersion = "cg-0.1.0";

struct GameEntry {
    std::string game_id;
    fs::path story_path;
};

std::string engine_path_from_env() {
    const char* env = std::getenv("CHEKHOV_ENGINE");
    return env ? env : "";
}

// Sorted for deterministic processing order. Without an external engine
// only .world files qualify.
std::vector<GameEntry> list_games(const std::string& dir, const std::string& engine_path) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("games directory not found: " + dir);
    }
    std::vector<GameEntry> games;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        fs::path path = entry.path();
        bool is_world = path.extension() == ".world";
        if (engine_path.empty() && !is_world) continue;
        games.push_back({path.stem().string(), path});
    }
    std::sort(games.begin(), games.end(),
              [](const GameEntry& a, const GameEntry& b) { return a.game_id < b.game_id; });
    return games;
}

std::string find_walkthrough(const std::string& dir, const std::string& game_id) {
    if (dir.empty()) return "";
    for (const char* ext : {".txt", ".walk"}) {
        fs::path candidate = fs::path(dir) / (game_id + ext);
        if (fs::is_regular_file(candidate)) return candidate.string();
    }
    return "";
}

cg::SessionConfig session_config(std::uint64_t seed, int max_moves,
                                 const std::string& engine_path) {
    cg::SessionConfig cfg;
    cfg.rng_seed = seed;
    cfg.max_moves = max_moves;
    cfg.engine_path = engine_path;
    return cfg;
}

// Per-game seed so walks stay independent of processing order.
std::uint64_t game_seed(std::uint64_t base, const std::string& game_id) {
    return base ^ cg::fnv1a64(game_id);
}

std::vector<double> parse_threshold_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::runtime_error("empty threshold list");
    std::sort(out.begin(), out.end());
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

int cmd_walk(const std::string& games_dir, const std::string& walkthroughs_dir, int steps,
             std::uint64_t seed, const std::string& out_dir) {
    std::string engine_path = engine_path_from_env();
    std::vector<GameEntry> games = list_games(games_dir, engine_path);
    if (games.empty()) {
        std::cerr << "walk: no games found in " << games_dir << "\n";
        return 2;
    }
    fs::create_directories(out_dir);
    cg::RunManifest manifest;
    manifest.config = {{"command", "walk"},
                       {"games", games_dir},
                       {"steps", std::to_string(steps)},
                       {"seed", std::to_string(seed)},
                       {"engine", engine_path}};
    manifest.run_id = cg::derive_run_id(manifest.config);

    std::vector<std::vector<cg::LocationRecord>> per_game;
    std::size_t failed = 0;
    for (const auto& game : games) {
        try {
            cg::StoryRef story = cg::make_story_ref(game.game_id, game.story_path.string());
            std::string wt_path = find_walkthrough(walkthroughs_dir, game.game_id);
            std::vector<cg::LocationRecord> records;
            if (!wt_path.empty()) {
                cg::Walkthrough wt = cg::load_walkthrough(game.game_id, wt_path);
                int budget = static_cast<int>(wt.commands.size()) * 2 + 16;
                cg::Session session = cg::Session::open(
                    story, session_config(game_seed(seed, game.game_id), budget, engine_path));
                records = cg::execute_walkthrough(session, wt);
            } else {
                cg::WalkConfig walk_cfg;
                walk_cfg.steps = steps;
                walk_cfg.rng_seed = game_seed(seed, game.game_id);
                cg::Session session = cg::Session::open(
                    story,
                    session_config(walk_cfg.rng_seed, steps * 2 + 16, engine_path));
                records = cg::random_walk(session, walk_cfg);
            }
            manifest.counters.locations += records.size();
            per_game.push_back(std::move(records));
            manifest.advance(game.game_id, cg::GameStatus::explored);
        } catch (const std::exception& e) {
            std::cerr << "walk: " << game.game_id << " failed: " << e.what() << "\n";
            manifest.advance(game.game_id, cg::GameStatus::failed);
            manifest.counters.errors++;
            ++failed;
        }
    }
    std::vector<cg::LocationRecord> merged = cg::merge_location_sets(per_game);
    cg::write_locations_file((fs::path(out_dir) / "locations.jsonl").string(), merged);
    manifest.save((fs::path(out_dir) / "run_manifest.json").string());
    std::cout << "walk: " << merged.size() << " locations from " << (games.size() - failed)
              << "/" << games.size() << " games\n";
    if (failed == games.size()) return 1;
    return failed > 0 ? 1 : 0;
}

void append_audit(std::ostream& out, const cg::AnnotatedLocation& annotated) {
    for (const auto& probe : annotated.evidence) {
        json line{
            {"game_id", annotated.record.game_id},
            {"location", cg::key_string(annotated.record.location)},
            {"candidate",
             {{"start", probe.candidate.start},
              {"end", probe.candidate.end},
              {"surface", probe.candidate.surface},
              {"normalized", probe.candidate.normalized}}},
            {"command", probe.command},
            {"response", probe.response},
            {"verdict", cg::to_string(probe.verdict)},
        };
        if (probe.verdict == cg::Verdict::error) line["error"] = probe.error_message;
        out << line.dump() << "\n";
    }
}

int cmd_probe(const std::string& games_dir, const std::string& out_dir,
              const std::string& patterns_file, const std::string& stopwords_file,
              std::uint64_t seed) {
    fs::path locations_path = fs::path(out_dir) / "locations.jsonl";
    if (!fs::is_regular_file(locations_path)) {
        std::cerr << "probe: missing location manifest " << locations_path << "\n";
        return 2;
    }
    std::string engine_path = engine_path_from_env();
    std::vector<cg::LocationRecord> locations =
        cg::read_locations_file(locations_path.string());
    cg::TrivialityPatternSet patterns = patterns_file.empty()
                                            ? cg::TrivialityPatternSet::builtin()
                                            : cg::TrivialityPatternSet::load(patterns_file);
    std::unordered_set<std::string> stopwords =
        stopwords_file.empty() ? cg::builtin_stopwords() : cg::load_word_list(stopwords_file);

    std::map<std::string, fs::path> story_paths;
    for (const auto& game : list_games(games_dir, engine_path)) {
        story_paths[game.game_id] = game.story_path;
    }

    cg::RunManifest manifest;
    manifest.config = {{"command", "probe"},
                       {"games", games_dir},
                       {"seed", std::to_string(seed)},
                       {"patterns", patterns.source},
                       {"engine", engine_path}};
    manifest.run_id = cg::derive_run_id(manifest.config);

    // resumability: skip locations already present in the output corpus
    fs::path cgif_path = fs::path(out_dir) / "cgif.jsonl";
    std::set<std::string> done;
    if (fs::is_regular_file(cgif_path)) {
        for (const auto& rec : cg::read_cgif_file(cgif_path.string())) {
            done.insert(rec.game_id + "\x1f" + cg::key_string(rec.location_key));
        }
    }
    std::ofstream cgif_out(cgif_path, std::ios::binary | std::ios::app);
    std::ofstream audit_out(fs::path(out_dir) / "audit.jsonl",
                            std::ios::binary | std::ios::app);

    std::map<std::string, std::vector<const cg::LocationRecord*>> by_game;
    std::vector<std::string> game_order;
    for (const auto& rec : locations) {
        auto [it, inserted] = by_game.try_emplace(rec.game_id);
        if (inserted) game_order.push_back(rec.game_id);
        it->second.push_back(&rec);
    }

    std::size_t failed = 0;
    for (const auto& game_id : game_order) {
        auto path_it = story_paths.find(game_id);
        if (path_it == story_paths.end()) {
            std::cerr << "probe: no story file for " << game_id << "\n";
            manifest.advance(game_id, cg::GameStatus::failed);
            ++failed;
            continue;
        }
        try {
            cg::StoryRef story = cg::make_story_ref(game_id, path_it->second.string());
            cg::SessionConfig cfg =
                session_config(game_seed(seed, game_id), 1 << 20, engine_path);
            const auto& recs = by_game[game_id];
            if (cg::detect_nondeterminism(story, cfg, recs.front()->prefix)) {
                manifest.advance(game_id, cg::GameStatus::nondeterministic);
                continue;
            }
            cg::Session session = cg::Session::open(story, cfg);
            for (const cg::LocationRecord* rec : recs) {
                std::string key = rec->game_id + "\x1f" + cg::key_string(rec->location);
                if (done.count(key)) continue;
                cg::AnnotatedLocation annotated =
                    cg::label_location(session, *rec, patterns, stopwords);
                manifest.counters.probes += annotated.evidence.size();
                for (const auto& probe : annotated.evidence) {
                    if (probe.verdict == cg::Verdict::error) manifest.counters.errors++;
                }
                cg::write_cgif(cgif_out, {cg::to_cgif_record(annotated, kPipelineVersion)});
                cgif_out.flush();
                append_audit(audit_out, annotated);
                manifest.counters.locations++;
                done.insert(key);
            }
            manifest.advance(game_id, cg::GameStatus::probed);
        } catch (const std::exception& e) {
            std::cerr << "probe: " << game_id << " failed: " << e.what() << "\n";
            manifest.advance(game_id, cg::GameStatus::failed);
            manifest.counters.errors++;
            ++failed;
        }
    }
    manifest.save((fs::path(out_dir) / "run_manifest.json").string());
    std::cout << "probe: " << done.size() << " locations labeled, " << failed
              << " games failed\n";
    return failed > 0 ? 1 : 0;
}

int cmd_build_corpus(const std::string& cgif_file, const std::string& ratios_text,
                     std::uint64_t seed, const std::string& out_dir) {
    std::vector<cg::CgifRecord> records = cg::read_cgif_file(cgif_file);
    std::vector<double> ratios;
    std::stringstream in(ratios_text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) ratios.push_back(std::stod(item));
    }
    auto buckets = cg::split_corpus(records, ratios, seed);
    fs::create_directories(out_dir);
    static const char* names[] = {"train", "dev", "test"};
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        std::string name = b < 3 ? names[b] : "bucket" + std::to_string(b);
        cg::write_cgif_file((fs::path(out_dir) / (name + ".jsonl")).string(), buckets[b]);
        std::cout << "build-corpus: " << name << " " << buckets[b].size() << " records\n";
    }
    return 0;
}

int cmd_export_bio(const std::string& cgif_file, const std::string& out_file) {
    std::vector<cg::CgifRecord> records = cg::read_cgif_file(cgif_file);
    std::vector<cg::BioDocument> docs;
    docs.reserve(records.size());
    for (const auto& rec : records) docs.push_back(cg::to_bio(rec));
    write_text_file(out_file, cg::export_conll(docs));
    std::cout << "export-bio: " << docs.size() << " documents\n";
    return 0;
}

int cmd_train_baseline(const std::string& train_file, double alpha,
                       const std::string& lexicon_file) {
    cg::Lexicon lexicon = cg::train_lexicon(cg::read_cgif_file(train_file), alpha);
    lexicon.save(lexicon_file);
    std::cout << "train-baseline: " << lexicon.table.size() << " surfaces\n";
    return 0;
}

int cmd_predict(const std::string& lexicon_file, const std::string& cgif_file,
                const std::string& out_file) {
    cg::Lexicon lexicon = cg::Lexicon::load(lexicon_file);
    std::vector<cg::PredictionRecord> out;
    for (const auto& rec : cg::read_cgif_file(cgif_file)) {
        out.push_back({rec.game_id, rec.location_key, cg::predict(lexicon, rec.text)});
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write: " + out_file);
    cg::write_predictions(f, out);
    std::cout << "predict: " << out.size() << " records\n";
    return 0;
}

json report_to_json(const cg::EvalReport& report) {
    return json{
        {"token_accuracy", report.token_accuracy},
        {"span_precision", report.span_precision},
        {"span_recall", report.span_recall},
        {"span_f1", report.span_f1},
        {"counts",
         {{"tp", report.counts.tp},
          {"fp", report.counts.fp},
          {"fn", report.counts.fn},
          {"tokens_correct", report.counts.tokens_correct},
          {"tokens_total", report.counts.tokens_total}}},
        {"unmatched_keys", report.unmatched_keys},
    };
}

int cmd_eval(const std::string& gold_file, const std::string& predictions_file,
             const std::string& report_file) {
    std::vector<cg::CgifRecord> gold = cg::read_cgif_file(gold_file);
    std::vector<cg::PredictionRecord> predictions = cg::read_predictions_file(predictions_file);
    cg::EvalReport report = cg::span_metrics(gold, cg::to_span_predictions(predictions));
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "accuracy %.4f  precision %.4f  recall %.4f  f1 %.4f\n"
                  "tp %zu  fp %zu  fn %zu  tokens %zu/%zu\n",
                  report.token_accuracy, report.span_precision, report.span_recall,
                  report.span_f1, report.counts.tp, report.counts.fp, report.counts.fn,
                  report.counts.tokens_correct, report.counts.tokens_total);
    std::cout << buf;
    for (const auto& key : report.unmatched_keys) {
        std::cerr << "eval: prediction without gold record: " << key << "\n";
    }
    if (!report_file.empty()) {
        write_text_file(report_file, report_to_json(report).dump(2) + "\n");
    }
    return 0;
}

int cmd_sweep(const std::string& gold_file, const std::string& predictions_file,
              const std::string& clubfloyd_file, const std::string& thresholds_text,
              const std::string& mode_text, const std::string& report_file) {
    std::vector<double> thresholds = parse_threshold_list(thresholds_text);
    cg::OverlapMode mode =
        mode_text == "unique" ? cg::OverlapMode::unique_ats : cg::OverlapMode::all_ats;
    if (mode_text != "unique" && mode_text != "all") {
        throw std::runtime_error("--mode must be all or unique");
    }

    // resolve prediction offsets to surfaces via the gold corpus texts
    std::map<std::string, const cg::CgifRecord*> gold_by_key;
    std::vector<cg::CgifRecord> gold = cg::read_cgif_file(gold_file);
    for (const auto& rec : gold) {
        gold_by_key[rec.game_id + "\x1f" + cg::key_string(rec.location_key)] = &rec;
    }
    std::vector<cg::SurfacePrediction> surfaces;
    for (const auto& pred : cg::read_predictions_file(predictions_file)) {
        auto it = gold_by_key.find(pred.game_id + "\x1f" + cg::key_string(pred.location_key));
        if (it == gold_by_key.end()) continue;
        const std::string& text = it->second->text;
        for (const auto& span : pred.spans) {
            if (span.end > text.size()) continue;
            surfaces.push_back(
                {cg::normalize_surface(text.substr(span.start, span.end - span.start)), span.p});
        }
    }

    std::ifstream cf(clubfloyd_file, std::ios::binary);
    if (!cf) throw std::runtime_error("cannot open transcripts: " + clubfloyd_file);
    cg::ClubFloydParse parsed = cg::parse_clubfloyd(cf);
    std::vector<cg::ActionTarget> ats = cg::extract_action_targets(parsed.pairs);

    std::vector<cg::OverlapReport> reports = cg::at_overlap(surfaces, ats, thresholds, mode);
    json out = json::array();
    std::cout << "threshold  share_cgs_in_at  share_ats_labeled  (mode " << mode_text << ")\n";
    for (const auto& r : reports) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "p > %-6.2f %-16s %.4f\n", r.threshold,
                      r.share_cgs_in_at ? std::to_string(*r.share_cgs_in_at).c_str() : "n/a",
                      r.share_ats_labeled);
        std::cout << buf;
        json row{{"threshold", r.threshold},
                 {"share_ats_labeled", r.share_ats_labeled},
                 {"mode", cg::to_string(r.mode)}};
        if (r.share_cgs_in_at) row["share_cgs_in_at"] = *r.share_cgs_in_at;
        else row["share_cgs_in_at"] = nullptr;
        out.push_back(row);
    }
    if (!report_file.empty()) write_text_file(report_file, out.dump(2) + "\n");
    return 0;
}

int cmd_analyze(const std::string& tripod_file, const std::string& lexicon_file,
                double threshold, const std::string& report_file) {
    cg::TripodParse parsed = cg::parse_tripod_file(tripod_file);
    for (const auto& id : parsed.rejected) {
        std::cerr << "analyze: rejected story " << id << "\n";
    }
    cg::Lexicon lexicon = cg::Lexicon::load(lexicon_file);
    cg::CgPredictor predictor = [&lexicon, threshold](const std::string& sentence) {
        return cg::apply_threshold(cg::predict(lexicon, sentence), threshold);
    };
    cg::TurningPointProfile profile = cg::turning_point_profile(parsed.stories, predictor);
    cg::OccurrenceMatrix matrix = cg::occurrence_matrix(parsed.stories, predictor);

    std::cout << "turning-point deltas (vs. five-TP mean):\n";
    std::cout << "TP   d_cg/sentence  d_words/sentence\n";
    for (std::size_t t = 0; t < 5; ++t) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%zu    %+12.4f   %+12.4f\n", t + 1,
                      profile.delta_cg_per_sentence[t], profile.delta_words_per_sentence[t]);
        std::cout << buf;
    }
    std::cout << "\nfirst/re-occurrence matrix (% of all first occurrences):\n";
    std::cout << "TP#      1      2      3      4      5\n";
    for (std::size_t i = 0; i < 5; ++i) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%zu   %6.1f %6.1f %6.1f %6.1f %6.1f\n", i + 1,
                      matrix.pct[i][0], matrix.pct[i][1], matrix.pct[i][2], matrix.pct[i][3],
                      matrix.pct[i][4]);
        std::cout << buf;
    }
    if (!report_file.empty()) {
        json j{{"delta_cg_per_sentence", profile.delta_cg_per_sentence},
               {"delta_words_per_sentence", profile.delta_words_per_sentence},
               {"stories_used", profile.stories_used},
               {"stories_skipped", profile.stories_skipped},
               {"occurrence_matrix", matrix.pct}};
        write_text_file(report_file, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_stats(const std::string& cgif_file) {
    cg::CorpusStats stats = cg::corpus_stats(cg::read_cgif_file(cgif_file));
    json j{{"locations", stats.locations},
           {"games", stats.games},
           {"bytes", stats.bytes},
           {"spans", stats.spans},
           {"spans_per_location", stats.spans_per_location}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chekhov's-gun labeling pipeline for interactive fiction"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::string games_dir, walkthroughs_dir, out_dir = "out";
    std::string patterns_file, stopwords_file;
    std::string cgif_file, gold_file, predictions_file, lexicon_file, report_file;
    std::string tripod_file, clubfloyd_file, out_file, train_file;
    std::string thresholds = "0.5,0.65,0.8,0.95";
    std::string ratios = "0.8,0.1,0.1";
    std::string mode = "all";
    int steps = 2500;
    int jobs = 1;
    std::uint64_t seed = 0;
    double alpha = 1.0;
    double threshold = 0.5;

    auto* walk = app.add_subcommand("walk", "enumerate locations per game");
    walk->add_option("--games", games_dir, "directory of story files")->required();
    walk->add_option("--walkthroughs", walkthroughs_dir, "directory of solution files");
    walk->add_option("--steps", steps, "random-walk steps");
    walk->add_option("--seed", seed, "run seed");
    walk->add_option("--jobs", jobs, "concurrent game sessions");
    walk->add_option("--out", out_dir, "output directory");

    auto* probe = app.add_subcommand("probe", "label locations by examine-probing");
    probe->add_option("--games", games_dir, "directory of story files")->required();
    probe->add_option("--out", out_dir, "run directory with locations.jsonl");
    probe->add_option("--patterns", patterns_file, "triviality pattern file");
    probe->add_option("--stopwords", stopwords_file, "stopword file");
    probe->add_option("--seed", seed, "run seed");
    probe->add_option("--jobs", jobs, "concurrent game sessions");

    auto* build = app.add_subcommand("build-corpus", "split a corpus at game granularity");
    build->add_option("--cgif", cgif_file, "input CGIF JSONL")->required();
    build->add_option("--ratios", ratios, "comma-separated split ratios");
    build->add_option("--seed", seed, "split seed");
    build->add_option("--out", out_dir, "output directory");

    auto* bio = app.add_subcommand("export-bio", "export CoNLL-style BIO tags");
    bio->add_option("--cgif", cgif_file, "input CGIF JSONL")->required();
    bio->add_option("--out-file", out_file, "output file")->required();

    auto* train = app.add_subcommand("train-baseline", "train the lexicon baseline");
    train->add_option("--train", train_file, "training CGIF JSONL")->required();
    train->add_option("--alpha", alpha, "smoothing constant");
    train->add_option("--lexicon", lexicon_file, "lexicon output path")->required();

    auto* predict = app.add_subcommand("predict", "emit baseline predictions");
    predict->add_option("--lexicon", lexicon_file, "trained lexicon")->required();
    predict->add_option("--cgif", cgif_file, "records to predict over")->required();
    predict->add_option("--out-file", out_file, "predictions JSONL")->required();

    auto* eval = app.add_subcommand("eval", "span metrics against gold");
    eval->add_option("--gold", gold_file, "gold CGIF JSONL")->required();
    eval->add_option("--predictions", predictions_file, "prediction interchange JSONL")
        ->required();
    eval->add_option("--report", report_file, "machine-readable report path");

    auto* sweep = app.add_subcommand("sweep", "action-target overlap across thresholds");
    sweep->add_option("--gold", gold_file, "gold CGIF JSONL (texts)")->required();
    sweep->add_option("--predictions", predictions_file, "prediction interchange JSONL")
        ->required();
    sweep->add_option("--transcripts", clubfloyd_file, "ClubFloyd-format transcripts")
        ->required();
    sweep->add_option("--thresholds", thresholds, "comma-separated thresholds");
    sweep->add_option("--mode", mode, "all|unique");
    sweep->add_option("--report", report_file, "machine-readable report path");

    auto* analyze = app.add_subcommand("analyze", "turning-point analytics");
    analyze->add_option("--tripod", tripod_file, "synopsis JSONL")->required();
    analyze->add_option("--lexicon", lexicon_file, "trained lexicon")->required();
    analyze->add_option("--threshold", threshold, "CG probability threshold");
    analyze->add_option("--report", report_file, "machine-readable report path");

    auto* stats = app.add_subcommand("stats", "corpus statistics");
    stats->add_option("--cgif", cgif_file, "input CGIF JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (walk->parsed()) return cmd_walk(games_dir, walkthroughs_dir, steps, seed, out_dir);
        if (probe->parsed())
            return cmd_probe(games_dir, out_dir, patterns_file, stopwords_file, seed);
        if (build->parsed()) return cmd_build_corpus(cgif_file, ratios, seed, out_dir);
        if (bio->parsed()) return cmd_export_bio(cgif_file, out_file);
        if (train->parsed()) return cmd_train_baseline(train_file, alpha, lexicon_file);
        if (predict->parsed()) return cmd_predict(lexicon_file, cgif_file, out_file);
        if (eval->parsed()) return cmd_eval(gold_file, predictions_file, report_file);
        if (sweep->parsed())
            return cmd_sweep(gold_file, predictions_file, clubfloyd_file, thresholds, mode,
                             report_file);
        if (analyze->parsed())
            return cmd_analyze(tripod_file, lexicon_file, threshold, report_file);
        if (stats->parsed()) return cmd_stats(cgif_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
