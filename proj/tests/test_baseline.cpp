#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cg/baseline.hpp"
#include "test_support.hpp"

#include <random>
#include <set>

using namespace cg;
using cgtest::TempDir;

namespace {

CgifRecord record(const std::string& text, std::vector<Span> spans,
                  const std::string& game = "g1") {
    CgifRecord rec;
    rec.game_id = game;
    rec.location_key = {"Room", "00000000"};
    rec.text = text;
    rec.spans = std::move(spans);
    rec.pipeline_version = "cg-test";
    return rec;
}

// four records mentioning "lamp", three of them with lamp inside a gold span
std::vector<CgifRecord> lamp_fixture() {
    return {
        record("a lamp and a door", {{2, 6}}),
        record("a lamp by the door", {{2, 6}, {14, 18}}),
        record("the lamp is lit", {{4, 8}}),
        record("a lamp sits there", {}),
    };
}

}  // namespace

TEST_CASE("train_lexicon counts candidate coverage") {
    Lexicon lex = train_lexicon(lamp_fixture());
    // oracle counted by hand over the four fixture texts
    REQUIRE(lex.table.count("lamp"));
    CHECK(lex.table["lamp"].cg_count == 3);
    CHECK(lex.table["lamp"].total_count == 4);
    REQUIRE(lex.table.count("door"));
    CHECK(lex.table["door"].cg_count == 1);
    CHECK(lex.table["door"].total_count == 2);
    REQUIRE(lex.table.count("lit"));
    CHECK(lex.table["lit"].cg_count == 0);
    CHECK(lex.table["lit"].total_count == 1);

    CHECK_THROWS(train_lexicon({}));
    CHECK_THROWS_AS(train_lexicon(lamp_fixture(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(train_lexicon(lamp_fixture(), -1.0), std::invalid_argument);
}

TEST_CASE("predict applies smoothed frequencies") {
    Lexicon lex = train_lexicon(lamp_fixture());
    auto preds = predict(lex, "a lamp here");
    REQUIRE(preds.size() == 1);
    CHECK(preds[0].start == 2);
    CHECK(preds[0].end == 6);
    CHECK(preds[0].p == doctest::Approx((3.0 + 1.0) / (4.0 + 2.0)));

    // unseen surface falls back to the smoothed prior
    auto unseen = predict(lex, "a zorble here");
    REQUIRE(unseen.size() == 1);
    CHECK(unseen[0].p == 0.5);

    CHECK(predict(lex, "").empty());
    // predictions come back sorted and non-overlapping
    auto many = predict(lex, "a lamp by the door beside the lit lamp");
    std::size_t prev_end = 0;
    for (const auto& p : many) {
        CHECK(p.start >= prev_end);
        prev_end = p.end;
    }
}

TEST_CASE("apply_threshold is strictly greater-than") {
    // entry (1, 2) at alpha 1 gives exactly p = 0.5
    Lexicon lex;
    lex.table["widget"] = {1, 2};
    auto preds = predict(lex, "a widget here");
    REQUIRE(preds.size() == 1);
    CHECK(preds[0].p == 0.5);

    CHECK(apply_threshold(preds, 0.5).empty());
    CHECK(apply_threshold(preds, 0.49).size() == 1);
    CHECK(apply_threshold(preds, 0.0).size() == 1);
    CHECK(apply_threshold({{0, 4, 0.0}}, 0.0).empty());
    CHECK_THROWS_AS(apply_threshold(preds, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(apply_threshold(preds, 1.1), std::invalid_argument);
}

TEST_CASE("kept spans shrink monotonically as the threshold rises") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PredictionSpan> preds;
        std::size_t pos = 0;
        int n = 1 + static_cast<int>(unit(rng) * 10);
        for (int i = 0; i < n; ++i) {
            preds.push_back({pos, pos + 3, unit(rng)});
            pos += 5;
        }
        std::size_t prev = preds.size() + 1;
        for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
            std::size_t kept = apply_threshold(preds, t).size();
            CHECK(kept <= prev);
            prev = kept;
        }
        CHECK(apply_threshold(preds, 1.0).empty());
    }
}

TEST_CASE("probabilities stay inside (0, 1)") {
    std::mt19937_64 rng(8);
    static const std::vector<std::string> nouns = cgtest::noun_pool();
    std::uniform_int_distribution<std::size_t> pick(0, nouns.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CgifRecord> corpus;
    for (int i = 0; i < 30; ++i) {
        std::string text = "a " + nouns[pick(rng)] + " and a " + nouns[pick(rng)];
        std::vector<Span> spans;
        if (unit(rng) < 0.5) {
            auto cands = extract_candidates(text);
            if (!cands.empty()) spans.push_back({cands[0].start, cands[0].end});
        }
        corpus.push_back(record(text, std::move(spans), "g" + std::to_string(i % 3)));
    }
    Lexicon lex = train_lexicon(corpus, 0.5);
    for (const auto& rec : corpus) {
        for (const auto& p : predict(lex, rec.text)) {
            CHECK(p.p > 0.0);
            CHECK(p.p < 1.0);
        }
    }
}

TEST_CASE("lexicon serialization round-trips and validates") {
    Lexicon lex = train_lexicon(lamp_fixture(), 2.0);
    Lexicon back = Lexicon::deserialize(lex.serialize());
    CHECK(back.alpha == lex.alpha);
    REQUIRE(back.table.size() == lex.table.size());
    for (const auto& [surface, entry] : lex.table) {
        REQUIRE(back.table.count(surface));
        CHECK(back.table[surface].cg_count == entry.cg_count);
        CHECK(back.table[surface].total_count == entry.total_count);
    }
    CHECK(back.serialize() == lex.serialize());

    TempDir dir("baseline");
    lex.save(dir.file("lex.json").string());
    Lexicon loaded = Lexicon::load(dir.file("lex.json").string());
    CHECK(loaded.serialize() == lex.serialize());

    CHECK_THROWS(Lexicon::load((dir.path() / "missing.json").string()));
    CHECK_THROWS(Lexicon::deserialize(R"({"alpha":0.0,"table":{}})"));
    CHECK_THROWS(Lexicon::deserialize(R"({"alpha":1.0,"table":{"x":[3,2]}})"));
    CHECK_THROWS(Lexicon::deserialize("not json"));
}

TEST_CASE("memorization: retraining data is recovered almost perfectly") {
    std::mt19937_64 rng(33);
    static const std::vector<std::string> nouns = cgtest::noun_pool();
    std::vector<CgifRecord> corpus;
    // every noun is consistently CG or consistently non-CG across the corpus
    for (std::size_t i = 0; i + 1 < nouns.size(); i += 2) {
        std::string text = "a " + nouns[i] + " and some " + nouns[i + 1] + ".";
        // first noun always gold, second never
        std::size_t start = 2;
        std::size_t end = start + nouns[i].size();
        corpus.push_back(record(text, {{start, end}}, "g" + std::to_string(i % 4)));
    }
    Lexicon lex = train_lexicon(corpus);
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& rec : corpus) {
        std::set<std::pair<std::size_t, std::size_t>> gold;
        for (const auto& s : rec.spans) gold.insert({s.start, s.end});
        std::set<std::pair<std::size_t, std::size_t>> predicted;
        for (const auto& s : apply_threshold(predict(lex, rec.text), 0.5)) {
            predicted.insert({s.start, s.end});
        }
        for (const auto& s : predicted) gold.count(s) ? ++tp : ++fp;
        for (const auto& s : gold) predicted.count(s) ? 0 : ++fn;
    }
    REQUIRE(tp > 0);
    double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    double f1 = 2.0 * precision * recall / (precision + recall);
    CHECK(f1 >= 0.9);
    (void)rng;
}
