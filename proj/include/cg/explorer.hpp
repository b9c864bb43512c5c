#pragma once

#include "cg/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cg {

struct Walkthrough {
    std::string game_id;
    std::vector<std::string> commands;
    std::string source;  // provenance note, free text
};

// One command per line, '#' comments, surrounding whitespace trimmed.
Walkthrough parse_walkthrough(const std::string& game_id, const std::string& text,
                              const std::string& source);
Walkthrough load_walkthrough(const std::string& game_id, const std::string& path);

enum class DiscoveredBy { walkthrough, random_walk };

std::string to_string(DiscoveredBy d);
DiscoveredBy discovered_by_from_string(const std::string& s);

struct LocationRecord {
    std::string game_id;
    LocationKey location;
    std::string description;           // full `look` text
    std::vector<std::string> prefix;   // commands reaching this location from reset
    DiscoveredBy discovered_by = DiscoveredBy::walkthrough;
};

struct WalkConfig {
    int steps = 2500;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> action_vocabulary;  // verb templates; defaults used if empty
    double direction_bias = 0.8;                 // probability of a movement command
};

const std::vector<std::string>& movement_commands();      // 12 compass/vertical verbs
const std::vector<std::string>& default_action_verbs();   // take, open, push, pull, examine

// Replays the walkthrough, fingerprinting after every command. Emits one
// record per first visit, prefix = commands sent so far. A halt mid-walk
// ends enumeration normally.
std::vector<LocationRecord> execute_walkthrough(Session& session, const Walkthrough& wt);

// Seeded random walk: movement with probability direction_bias, otherwise
// verb + noun sampled from the current description. Pure function of
// (story, cfg).
std::vector<LocationRecord> random_walk(Session& session, const WalkConfig& cfg);

// Union keyed by (game_id, location); shorter prefix wins on collision;
// stable order by first appearance.
std::vector<LocationRecord> merge_location_sets(
    const std::vector<std::vector<LocationRecord>>& lists);

}  // namespace cg
