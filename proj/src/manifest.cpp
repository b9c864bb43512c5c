#include "cg/manifest.hpp"

#include "cg/text.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace cg {

std::string to_string(GameStatus s) {
    switch (s) {
        case GameStatus::pending: return "pending";
        case GameStatus::explored: return "explored";
        case GameStatus::probed: return "probed";
        case GameStatus::failed: return "failed";
        case GameStatus::nondeterministic: return "nondeterministic";
    }
    return "pending";
}

GameStatus game_status_from_string(const std::string& s) {
    if (s == "pending") return GameStatus::pending;
    if (s == "explored") return GameStatus::explored;
    if (s == "probed") return GameStatus::probed;
    if (s == "failed") return GameStatus::failed;
    if (s == "nondeterministic") return GameStatus::nondeterministic;
    throw std::runtime_error("unknown game status: " + s);
}

namespace {

bool terminal(GameStatus s) {
    return s == GameStatus::failed || s == GameStatus::nondeterministic;
}

int rank(GameStatus s) {
    switch (s) {
        case GameStatus::pending: return 0;
        case GameStatus::explored: return 1;
        case GameStatus::probed: return 2;
        default: return 3;
    }
}

}  // namespace

void RunManifest::advance(const std::string& game_id, GameStatus next) {
    auto it = games.find(game_id);
    GameStatus current = it == games.end() ? GameStatus::pending : it->second;
    if (current == next) return;
    if (terminal(current) || rank(next) <= rank(current)) {
        throw std::runtime_error("invalid status transition for " + game_id + ": " +
                                 to_string(current) + " -> " + to_string(next));
    }
    games[game_id] = next;
}

GameStatus RunManifest::status(const std::string& game_id) const {
    auto it = games.find(game_id);
    return it == games.end() ? GameStatus::pending : it->second;
}

std::string RunManifest::serialize() const {
    json games_json = json::object();
    for (const auto& [id, status] : games) games_json[id] = to_string(status);
    json j{
        {"run_id", run_id},
        {"games", games_json},
        {"config", config},
        {"counters",
         {{"locations", counters.locations},
          {"probes", counters.probes},
          {"errors", counters.errors}}},
    };
    return j.dump(2) + "\n";
}

RunManifest RunManifest::deserialize(const std::string& text) {
    json j = json::parse(text);
    RunManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    for (const auto& [id, status] : j.at("games").items()) {
        m.games[id] = game_status_from_string(status.get<std::string>());
    }
    for (const auto& [key, value] : j.at("config").items()) {
        m.config[key] = value.get<std::string>();
    }
    const auto& c = j.at("counters");
    m.counters.locations = c.at("locations").get<std::size_t>();
    m.counters.probes = c.at("probes").get<std::size_t>();
    m.counters.errors = c.at("errors").get<std::size_t>();
    return m;
}

void RunManifest::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << serialize();
    std::ofstream meta(path + ".meta.json", std::ios::binary);
    if (meta) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        json j{{"saved_at_ms",
                std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
        meta << j.dump() << "\n";
    }
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

std::string derive_run_id(const std::map<std::string, std::string>& config) {
    std::string blob;
    for (const auto& [key, value] : config) blob += key + "=" + value + "\n";
    return "run-" + hex64(fnv1a64(blob)).substr(0, 12);
}

}  // namespace cg
