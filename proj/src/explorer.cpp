#include "cg/explorer.hpp"

#include "cg/text.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cg {

Walkthrough parse_walkthrough(const std::string& game_id, const std::string& text,
                              const std::string& source) {
    Walkthrough wt;
    wt.game_id = game_id;
    wt.source = source;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string cmd = collapse_whitespace(line);
        if (cmd.empty() || cmd[0] == '#') continue;
        wt.commands.push_back(std::move(cmd));
    }
    if (wt.commands.empty()) {
        throw std::runtime_error("walkthrough for " + game_id + " has no commands");
    }
    return wt;
}

Walkthrough load_walkthrough(const std::string& game_id, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open walkthrough: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_walkthrough(game_id, buf.str(), path);
}

std::string to_string(DiscoveredBy d) {
    return d == DiscoveredBy::walkthrough ? "walkthrough" : "random_walk";
}

DiscoveredBy discovered_by_from_string(const std::string& s) {
    if (s == "walkthrough") return DiscoveredBy::walkthrough;
    if (s == "random_walk") return DiscoveredBy::random_walk;
    throw std::runtime_error("unknown discovered_by: " + s);
}

const std::vector<std::string>& movement_commands() {
    static const std::vector<std::string> cmds = {
        "north", "south", "east",  "west", "northeast", "northwest",
        "southeast", "southwest", "up", "down", "in", "out"};
    return cmds;
}

const std::vector<std::string>& default_action_verbs() {
    static const std::vector<std::string> verbs = {"take", "open", "push", "pull", "examine"};
    return verbs;
}

namespace {

// Looks, fingerprints, and records the location if unseen. Returns the
// look text, or empty when the session halted before the look.
std::string observe(Session& session, const std::vector<std::string>& prefix,
                    DiscoveredBy discovered_by,
                    std::map<std::string, std::size_t>& seen,
                    std::vector<LocationRecord>& records) {
    if (session.halted()) return {};
    EngineResponse resp = session.send_command("look");
    LocationKey key = parse_location_key(resp.raw_text);
    std::string id = key_string(key);
    if (!seen.count(id)) {
        seen.emplace(id, records.size());
        records.push_back({session.story().game_id, key, resp.raw_text, prefix, discovered_by});
    }
    return resp.raw_text;
}

}  // namespace

std::vector<LocationRecord> execute_walkthrough(Session& session, const Walkthrough& wt) {
    if (session.move_index() != 0) {
        throw std::logic_error("execute_walkthrough needs a fresh session");
    }
    std::vector<LocationRecord> records;
    std::map<std::string, std::size_t> seen;
    std::vector<std::string> prefix;
    observe(session, prefix, DiscoveredBy::walkthrough, seen, records);
    for (std::size_t i = 0; i < wt.commands.size(); ++i) {
        if (session.halted()) break;
        EngineResponse resp;
        try {
            resp = session.send_command(wt.commands[i]);
        } catch (const SessionError& e) {
            throw SessionError(e.kind(),
                               std::string(e.what()) + " (walkthrough command " +
                                   std::to_string(i) + ": " + wt.commands[i] + ")",
                               static_cast<int>(i));
        }
        prefix.push_back(wt.commands[i]);
        if (resp.halted) break;
        observe(session, prefix, DiscoveredBy::walkthrough, seen, records);
    }
    return records;
}

std::vector<LocationRecord> random_walk(Session& session, const WalkConfig& cfg) {
    if (cfg.steps < 1) throw std::invalid_argument("WalkConfig.steps must be >= 1");
    if (cfg.direction_bias < 0.0 || cfg.direction_bias > 1.0) {
        throw std::invalid_argument("WalkConfig.direction_bias must be in [0,1]");
    }
    if (session.move_index() != 0) {
        throw std::logic_error("random_walk needs a fresh session");
    }
    const auto& verbs =
        cfg.action_vocabulary.empty() ? default_action_verbs() : cfg.action_vocabulary;
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<LocationRecord> records;
    std::map<std::string, std::size_t> seen;
    std::vector<std::string> prefix;
    std::string description =
        observe(session, prefix, DiscoveredBy::random_walk, seen, records);

    for (int step = 0; step < cfg.steps && !session.halted(); ++step) {
        std::string cmd;
        if (coin(rng) < cfg.direction_bias) {
            std::uniform_int_distribution<std::size_t> pick(0, movement_commands().size() - 1);
            cmd = movement_commands()[pick(rng)];
        } else {
            std::vector<std::string> nouns;
            for (const auto& tok : tokenize_alpha(description)) {
                std::string low = to_lower(tok.surface);
                if (!builtin_stopwords().count(low)) nouns.push_back(low);
            }
            if (nouns.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, movement_commands().size() - 1);
                cmd = movement_commands()[pick(rng)];
            } else {
                std::uniform_int_distribution<std::size_t> pick_verb(0, verbs.size() - 1);
                std::uniform_int_distribution<std::size_t> pick_noun(0, nouns.size() - 1);
                cmd = verbs[pick_verb(rng)] + " " + nouns[pick_noun(rng)];
            }
        }
        EngineResponse resp = session.send_command(cmd);
        prefix.push_back(cmd);
        if (resp.halted) break;
        std::string look = observe(session, prefix, DiscoveredBy::random_walk, seen, records);
        if (!look.empty()) description = look;
    }
    return records;
}

std::vector<LocationRecord> merge_location_sets(
    const std::vector<std::vector<LocationRecord>>& lists) {
    std::vector<LocationRecord> out;
    std::map<std::string, std::size_t> index;  // (game_id|key) -> position in out
    for (const auto& list : lists) {
        for (const auto& rec : list) {
            std::string id = rec.game_id + "\x1f" + key_string(rec.location);
            auto it = index.find(id);
            if (it == index.end()) {
                index.emplace(id, out.size());
                out.push_back(rec);
            } else if (rec.prefix.size() < out[it->second].prefix.size()) {
                out[it->second] = rec;
            }
        }
    }
    return out;
}

}  // namespace cg
