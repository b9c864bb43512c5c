#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace cg {

enum class GameStatus { pending, explored, probed, failed, nondeterministic };

std::string to_string(GameStatus s);
GameStatus game_status_from_string(const std::string& s);

// Per-run bookkeeping for resumable pipelines. Status transitions are
// forward-only: pending -> explored -> probed, with failed and
// nondeterministic as terminal states reachable from any non-terminal one.
struct RunManifest {
    std::string run_id;
    std::map<std::string, GameStatus> games;
    std::map<std::string, std::string> config;  // snapshot of effective settings
    struct Counters {
        std::size_t locations = 0;
        std::size_t probes = 0;
        std::size_t errors = 0;
    } counters;

    // Throws on a backward transition.
    void advance(const std::string& game_id, GameStatus next);
    GameStatus status(const std::string& game_id) const;

    std::string serialize() const;
    static RunManifest deserialize(const std::string& text);
    // Timestamps go to a "<path>.meta.json" sidecar so the manifest itself
    // stays byte-identical across reruns.
    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);
};

// Deterministic run id derived from the config snapshot.
std::string derive_run_id(const std::map<std::string, std::string>& config);

}  // namespace cg
