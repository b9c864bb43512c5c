#pragma once

#include "cg/engine.hpp"
#include "cg/mock_world.hpp"
#include "cg/text.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cgtest {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = fs::temp_directory_path() /
                ("cg_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    fs::path file(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const char* tiny_world() {
    return
        "ROOM Foyer\n"
        "DESC You see a brass lamp here. A sturdy door leads north. Dust covers the floor.\n"
        "EXIT north Hall\n"
        "OBJECT lamp RESPONSE The lamp glows with a faint inner light.\n"
        "OBJECT door RESPONSE The door is made of solid oak.\n"
        "OBJECT dust TRIVIAL\n"
        "ROOM Hall\n"
        "DESC A long hall stretches east. A silver key rests on a hook.\n"
        "EXIT south Foyer\n"
        "EXIT east Vault\n"
        "OBJECT key RESPONSE A small silver key, cold to the touch.\n"
        "OBJECT hook TRIVIAL\n"
        "ROOM Vault\n"
        "DESC Bare stone walls surround an iron chest.\n"
        "EXIT west Hall\n"
        "OBJECT chest RESPONSE The chest hums with quiet power.\n";
}

inline cg::StoryRef story_from_text(const TempDir& dir, const std::string& name,
                                    const std::string& world_text) {
    fs::path path = dir.file(name + ".world");
    write_file(path, world_text);
    return cg::make_story_ref(name, path.string());
}

// Nouns kept disjoint from room-name words and stopwords.
inline const std::vector<std::string>& noun_pool() {
    static const std::vector<std::string> nouns = {
        "lamp",   "door",   "torch",  "anvil",  "mirror",  "statue", "ladder", "rope",
        "chest",  "sword",  "shield", "candle", "bottle",  "lever",  "carpet", "hammer",
        "bell",   "flask",  "gem",    "harp",   "idol",    "jar",    "kettle", "locket",
        "needle", "orb",    "plinth", "quill",  "sconce",  "tome"};
    return nouns;
}

inline const std::vector<std::string>& room_name_pool() {
    static const std::vector<std::string> names = {
        "Alpha Chamber", "Beta Gallery",  "Gamma Cellar", "Delta Attic",  "Epsilon Court",
        "Zeta Landing",  "Eta Passage",   "Theta Shrine", "Iota Balcony", "Kappa Archive",
        "Lambda Crypt",  "Sigma Rotunda", "Omega Garret", "Tau Alcove",   "Phi Terrace"};
    return names;
}

struct GeneratedWorld {
    cg::MockWorld world;
    // room name -> normalized names of its non-trivial objects
    std::map<std::string, std::set<std::string>> nontrivial_by_room;
};

// Connected random world: spanning tree over paired directions, objects
// scattered over rooms, most of them mentioned in their room description.
inline GeneratedWorld generate_world(std::mt19937_64& rng, int n_rooms, int n_objects) {
    static const std::vector<std::pair<std::string, std::string>> dir_pairs = {
        {"north", "south"},         {"east", "west"}, {"northeast", "southwest"},
        {"northwest", "southeast"}, {"up", "down"},   {"in", "out"}};
    GeneratedWorld gen;
    std::vector<std::string> names = room_name_pool();
    std::shuffle(names.begin(), names.end(), rng);
    names.resize(n_rooms);
    for (const auto& name : names) {
        cg::MockRoom room;
        room.name = name;
        room.desc = "A quiet chamber under pale light.";
        gen.world.rooms.push_back(std::move(room));
    }
    for (int i = 1; i < n_rooms; ++i) {
        std::uniform_int_distribution<int> pick_parent(0, i - 1);
        int parent = pick_parent(rng);
        for (int attempt = 0; attempt < 32; ++attempt) {
            std::uniform_int_distribution<std::size_t> pick_dir(0, dir_pairs.size() - 1);
            const auto& [fwd, back] = dir_pairs[pick_dir(rng)];
            if (gen.world.rooms[parent].exits.count(fwd) ||
                gen.world.rooms[i].exits.count(back)) {
                parent = pick_parent(rng);
                continue;
            }
            gen.world.rooms[parent].exits[fwd] = gen.world.rooms[i].name;
            gen.world.rooms[i].exits[back] = gen.world.rooms[parent].name;
            break;
        }
    }
    std::vector<std::string> nouns = noun_pool();
    std::shuffle(nouns.begin(), nouns.end(), rng);
    std::uniform_int_distribution<int> pick_room(0, n_rooms - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int k = 0; k < n_objects; ++k) {
        const std::string& noun = nouns[k % nouns.size()];
        int r = pick_room(rng);
        cg::MockRoom& room = gen.world.rooms[r];
        if (std::any_of(room.objects.begin(), room.objects.end(),
                        [&](const cg::MockObject& o) { return o.name == noun; }))
            continue;
        cg::MockObject obj;
        obj.name = noun;
        obj.trivial = coin(rng) < 0.4;
        if (!obj.trivial) obj.response = "The " + noun + " hums with quiet power.";
        room.objects.push_back(obj);
        if (coin(rng) < 0.85) room.desc += " A " + noun + " stands by the wall.";
        if (!obj.trivial) gen.nontrivial_by_room[room.name].insert(noun);
    }
    // an occasional mention of a noun that is not an object here
    for (auto& room : gen.world.rooms) {
        if (coin(rng) < 0.3) {
            const std::string& ghost = nouns[nouns.size() - 1 - (pick_room(rng) % 5)];
            bool present = std::any_of(room.objects.begin(), room.objects.end(),
                                       [&](const cg::MockObject& o) { return o.name == ghost; });
            if (!present) room.desc += " Someone scratched the word " + ghost + " into the wall.";
        }
    }
    return gen;
}

}  // namespace cgtest
