#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cg/corpus.hpp"
#include "test_support.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace cg;

namespace {

CgifRecord sample_record(const std::string& game = "g1") {
    CgifRecord rec;
    rec.game_id = game;
    rec.location_key = {"Foyer", "0011aabb"};
    rec.text = "You see a brass lamp here. A sturdy door leads north.";
    rec.spans = {{10, 20}, {29, 40}};
    rec.discovered_by = DiscoveredBy::walkthrough;
    rec.pipeline_version = "cg-test";
    return rec;
}

// token-aligned random records for property tests
std::vector<CgifRecord> random_corpus(std::mt19937_64& rng, int n_records, int n_games) {
    static const std::vector<std::string> words = {"lamp",  "door",  "key",   "torch", "chest",
                                                   "stone", "rope",  "anvil", "bell",  "gem"};
    std::uniform_int_distribution<int> n_tokens(1, 12);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<CgifRecord> out;
    for (int i = 0; i < n_records; ++i) {
        CgifRecord rec;
        rec.game_id = "game" + std::to_string(i % n_games);
        rec.location_key = {"Room " + std::to_string(i), "00000000"};
        std::vector<Span> token_spans;
        std::string text;
        int tokens = n_tokens(rng);
        for (int t = 0; t < tokens; ++t) {
            if (!text.empty()) text += " ";
            std::size_t start = text.size();
            text += words[pick(rng)];
            token_spans.push_back({start, text.size()});
        }
        rec.text = text;
        // random non-overlapping token-aligned spans
        std::size_t t = 0;
        while (t < token_spans.size()) {
            if (coin(rng) < 0.35) {
                std::size_t len = 1 + static_cast<std::size_t>(coin(rng) * 2.0);
                std::size_t last = std::min(t + len - 1, token_spans.size() - 1);
                rec.spans.push_back({token_spans[t].start, token_spans[last].end});
                t = last + 2;
            } else {
                ++t;
            }
        }
        rec.discovered_by = coin(rng) < 0.5 ? DiscoveredBy::walkthrough
                                            : DiscoveredBy::random_walk;
        rec.pipeline_version = "cg-test";
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

TEST_CASE("cgif round-trip") {
    SUBCASE("empty corpus") {
        CHECK(write_cgif({}).empty());
        std::istringstream in("");
        CHECK(read_cgif(in).empty());
    }
    SUBCASE("single record round-trips byte-exactly") {
        std::string once = write_cgif({sample_record()});
        std::istringstream in(once);
        auto back = read_cgif(in);
        REQUIRE(back.size() == 1);
        CHECK(write_cgif(back) == once);
        CHECK(back[0].text == sample_record().text);
        CHECK(back[0].spans == sample_record().spans);
    }
    SUBCASE("malformed line reports its number") {
        std::string good = write_cgif({sample_record()});
        std::istringstream in(good + "{not json\n");
        try {
            read_cgif(in);
            FAIL("expected error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("overlapping spans rejected with line number") {
        CgifRecord bad = sample_record();
        bad.spans = {{10, 20}, {15, 25}};
        std::string line =
            R"({"discovered_by":"walkthrough","game_id":"g","location_key":{"body_digest":"00000000","room_name":"R"},"pipeline_version":"v","spans":[[10,20],[15,25]],"text":")" +
            std::string(30, 'x') + R"("})";
        std::istringstream in(line + "\n");
        CHECK_THROWS_WITH_AS(read_cgif(in), doctest::Contains("line 1"), std::runtime_error);
        CHECK_THROWS(write_cgif({bad}));
    }
}

TEST_CASE("round-trip property over random corpora") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        auto corpus = random_corpus(rng, 5, 2);
        std::string bytes = write_cgif(corpus);
        std::istringstream in(bytes);
        auto back = read_cgif(in);
        REQUIRE(write_cgif(back) == bytes);
    }
}

TEST_CASE("bio tagging") {
    SUBCASE("brass lamp example") {
        CgifRecord rec;
        rec.game_id = "g";
        rec.text = "brass lamp here";
        rec.spans = {{0, 10}};
        BioDocument doc = to_bio(rec);
        REQUIRE(doc.tokens.size() == 3);
        CHECK(doc.tags == std::vector<BioTag>{BioTag::B, BioTag::I, BioTag::O});
    }
    SUBCASE("no spans means all O") {
        CgifRecord rec;
        rec.game_id = "g";
        rec.text = "nothing to see";
        BioDocument doc = to_bio(rec);
        for (auto tag : doc.tags) CHECK(tag == BioTag::O);
    }
    SUBCASE("well-formedness: no I after O") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            auto corpus = random_corpus(rng, 3, 1);
            for (const auto& rec : corpus) {
                BioDocument doc = to_bio(rec);
                REQUIRE(doc.tags.size() == doc.tokens.size());
                for (std::size_t i = 0; i < doc.tags.size(); ++i) {
                    if (doc.tags[i] == BioTag::I) {
                        REQUIRE(i > 0);
                        REQUIRE(doc.tags[i - 1] != BioTag::O);
                    }
                }
            }
        }
    }
    SUBCASE("from_bio/to_bio token-coverage identity") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 200; ++trial) {
            auto corpus = random_corpus(rng, 2, 1);
            for (const auto& rec : corpus) {
                BioDocument doc = to_bio(rec);
                std::vector<Span> back = from_bio(doc);
                auto covered = [&](const std::vector<Span>& spans) {
                    std::set<std::size_t> tokens;
                    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
                        for (const auto& s : spans) {
                            if (doc.tokens[i].start >= s.start && doc.tokens[i].end <= s.end) {
                                tokens.insert(i);
                            }
                        }
                    }
                    return tokens;
                };
                REQUIRE(covered(rec.spans) == covered(back));
            }
        }
    }
    SUBCASE("conll export") {
        CgifRecord rec;
        rec.game_id = "g";
        rec.text = "brass lamp here";
        rec.spans = {{0, 10}};
        std::string conll = export_conll({to_bio(rec), to_bio(rec)});
        CHECK(conll == "brass\tB\nlamp\tI\nhere\tO\n\nbrass\tB\nlamp\tI\nhere\tO\n");
    }
}

TEST_CASE("split_corpus") {
    std::mt19937_64 rng(3);
    auto corpus = random_corpus(rng, 40, 10);

    SUBCASE("10 games at 0.8/0.1/0.1 gives 8/1/1 games") {
        auto buckets = split_corpus(corpus, {0.8, 0.1, 0.1}, 1);
        REQUIRE(buckets.size() == 3);
        auto games_in = [](const std::vector<CgifRecord>& bucket) {
            std::set<std::string> games;
            for (const auto& r : bucket) games.insert(r.game_id);
            return games;
        };
        CHECK(games_in(buckets[0]).size() == 8);
        CHECK(games_in(buckets[1]).size() == 1);
        CHECK(games_in(buckets[2]).size() == 1);
        // leakage freedom
        for (const auto& g : games_in(buckets[0])) {
            CHECK_FALSE(games_in(buckets[1]).count(g));
            CHECK_FALSE(games_in(buckets[2]).count(g));
        }
        std::size_t total = buckets[0].size() + buckets[1].size() + buckets[2].size();
        CHECK(total == corpus.size());
    }
    SUBCASE("deterministic under seed") {
        auto a = split_corpus(corpus, {0.8, 0.1, 0.1}, 5);
        auto b = split_corpus(corpus, {0.8, 0.1, 0.1}, 5);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(write_cgif(a[i]) == write_cgif(b[i]));
    }
    SUBCASE("fewer games than buckets") {
        auto two_games = random_corpus(rng, 4, 2);
        CHECK_THROWS(split_corpus(two_games, {0.4, 0.3, 0.3}, 1));
    }
    SUBCASE("bad ratios") {
        CHECK_THROWS_AS(split_corpus(corpus, {0.5, 0.2}, 1), std::invalid_argument);
        CHECK_THROWS_AS(split_corpus(corpus, {1.2, -0.2}, 1), std::invalid_argument);
    }
}

TEST_CASE("parse_clubfloyd") {
    SUBCASE("well-formed group") {
        auto parsed = parse_clubfloyd(
            "[CLS] West of House [SEP] open mailbox [SEP] Opening the mailbox reveals "
            "a leaflet. [SEP] read leaflet [SEP]");
        REQUIRE(parsed.pairs.size() == 1);
        CHECK(parsed.skipped == 0);
        CHECK(parsed.pairs[0].observation == "West of House");
        CHECK(parsed.pairs[0].action == "open mailbox");
        CHECK(parsed.pairs[0].next_observation ==
              "Opening the mailbox reveals a leaflet.");
        CHECK(parsed.pairs[0].next_action == "read leaflet");
    }
    SUBCASE("missing final separator is skipped and counted") {
        auto parsed = parse_clubfloyd("[CLS] obs [SEP] act [SEP] next [SEP] dangling");
        CHECK(parsed.pairs.empty());
        CHECK(parsed.skipped == 1);
    }
    SUBCASE("three groups in input order") {
        std::string group = "[CLS] o [SEP] take lamp [SEP] n [SEP] a [SEP]\n";
        auto parsed = parse_clubfloyd(group + group + group);
        CHECK(parsed.pairs.size() == 3);
    }
    SUBCASE("truncated group before the next [CLS]") {
        auto parsed =
            parse_clubfloyd("[CLS] o1 [SEP] a1 [SEP] [CLS] o2 [SEP] a2 [SEP] n2 [SEP] na2 [SEP]");
        REQUIRE(parsed.pairs.size() == 1);
        CHECK(parsed.skipped == 1);
        CHECK(parsed.pairs[0].observation == "o2");
    }
}

TEST_CASE("extract_action_targets") {
    auto pairs = [](std::vector<std::string> actions) {
        std::vector<ClubFloydPair> out;
        for (auto& a : actions) out.push_back({"obs", a, "next", "na"});
        return out;
    };
    SUBCASE("verb stripped, bare verbs dropped") {
        auto ats = extract_action_targets(pairs({"take lamp", "open door", "look"}));
        REQUIRE(ats.size() == 2);
        CHECK(ats[0].normalized == "lamp");
        CHECK(ats[0].count == 1);
        CHECK(ats[1].normalized == "door");
    }
    SUBCASE("counts aggregate across verbs") {
        auto ats = extract_action_targets(pairs({"take lamp", "rub lamp"}));
        REQUIRE(ats.size() == 1);
        CHECK(ats[0].normalized == "lamp");
        CHECK(ats[0].count == 2);
    }
    SUBCASE("directions count as targets under the literal rule") {
        auto ats = extract_action_targets(pairs({"go north"}));
        REQUIRE(ats.size() == 1);
        CHECK(ats[0].normalized == "north");
    }
}

TEST_CASE("parse_tripod") {
    auto line = [](const std::string& id, int n_sentences, const std::string& tps) {
        std::string sentences = "[";
        for (int i = 0; i < n_sentences; ++i) {
            if (i) sentences += ",";
            sentences += "\"Sentence number " + std::to_string(i) + ".\"";
        }
        sentences += "]";
        return "{\"story_id\":\"" + id + "\",\"sentences\":" + sentences +
               ",\"turning_points\":" + tps + "}\n";
    };
    SUBCASE("valid story") {
        std::istringstream in(line("s1", 10, "[0,2,4,6,8]"));
        auto parsed = parse_tripod(in);
        REQUIRE(parsed.stories.size() == 1);
        CHECK(parsed.rejected.empty());
        CHECK(parsed.stories[0].turning_points == std::array<int, 5>{0, 2, 4, 6, 8});
    }
    SUBCASE("non-increasing turning points rejected") {
        std::istringstream in(line("s2", 10, "[0,2,2,6,8]"));
        auto parsed = parse_tripod(in);
        CHECK(parsed.stories.empty());
        REQUIRE(parsed.rejected.size() == 1);
        CHECK(parsed.rejected[0] == "s2");
    }
    SUBCASE("wrong arity rejected") {
        std::istringstream in(line("s3", 10, "[0,2,4,6]"));
        auto parsed = parse_tripod(in);
        CHECK(parsed.stories.empty());
        CHECK(parsed.rejected.size() == 1);
    }
    SUBCASE("out-of-range index rejected, others kept") {
        std::istringstream in(line("ok", 10, "[0,2,4,6,8]") + line("bad", 5, "[0,1,2,3,9]"));
        auto parsed = parse_tripod(in);
        CHECK(parsed.stories.size() == 1);
        CHECK(parsed.rejected == std::vector<std::string>{"bad"});
    }
}

TEST_CASE("corpus_stats") {
    SUBCASE("empty") {
        CorpusStats stats = corpus_stats({});
        CHECK(stats.locations == 0);
        CHECK(stats.games == 0);
        CHECK(stats.spans == 0);
        CHECK(stats.spans_per_location == 0.0);
    }
    SUBCASE("counts") {
        CgifRecord a = sample_record("g1");             // 2 spans
        CgifRecord b = sample_record("g1");
        b.location_key.room_name = "Hall";
        CgifRecord c = sample_record("g2");
        c.spans = {{10, 20}};                            // 1 span
        CorpusStats stats = corpus_stats({a, b, c});
        CHECK(stats.locations == 3);
        CHECK(stats.games == 2);
        CHECK(stats.spans == 5);
        CHECK(stats.bytes == write_cgif({a, b, c}).size());
        CHECK(stats.spans_per_location == doctest::Approx(5.0 / 3.0));
    }
}

TEST_CASE("prediction interchange round-trip") {
    PredictionRecord rec;
    rec.game_id = "g1";
    rec.location_key = {"Foyer", "0011aabb"};
    rec.spans = {{10, 20, 0.75}, {29, 40, 0.5}};
    std::ostringstream out;
    write_predictions(out, {rec});
    std::istringstream in(out.str());
    auto back = read_predictions(in);
    REQUIRE(back.size() == 1);
    REQUIRE(back[0].spans.size() == 2);
    CHECK(back[0].spans[0].p == 0.75);
    CHECK(back[0].game_id == "g1");

    std::istringstream bad("{\"game_id\":\"g\",\"location_key\":{\"room_name\":\"r\","
                           "\"body_digest\":\"00000000\"},\"spans\":[{\"start\":5,\"end\":2,"
                           "\"p\":0.5}]}\n");
    CHECK_THROWS_WITH_AS(read_predictions(bad), doctest::Contains("line 1"),
                         std::runtime_error);
}

TEST_CASE("location manifest round-trip") {
    LocationRecord rec{"g1", {"Foyer", "0011aabb"}, "You see things.", {"north", "take key"},
                       DiscoveredBy::random_walk};
    std::ostringstream out;
    write_locations(out, {rec});
    std::istringstream in(out.str());
    auto back = read_locations(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].location == rec.location);
    CHECK(back[0].prefix == rec.prefix);
    CHECK(back[0].discovered_by == DiscoveredBy::random_walk);
}
