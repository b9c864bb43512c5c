#pragma once

#include "cg/engine.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cg {

// Mock-world file: one directive per line.
//   ROOM <name>
//   DESC <text>                (repeated lines append)
//   EXIT <dir> <room>
//   OBJECT <name...> TRIVIAL
//   OBJECT <name...> RESPONSE <text>
//   FATAL                      (entering this room ends the story)
//   NOISE                      (look output carries an unseeded random tag)
// The first ROOM is the starting location.

struct MockObject {
    std::string name;        // normalized, may be multi-word
    bool trivial = false;
    std::string response;    // non-trivial examine text
};

struct MockRoom {
    std::string name;
    std::string desc;
    std::map<std::string, std::string> exits;  // direction -> room name
    std::vector<MockObject> objects;
    bool fatal = false;
    bool noisy = false;
};

struct MockWorld {
    std::vector<MockRoom> rooms;

    static MockWorld parse(const std::string& text);
    static MockWorld load_file(const std::string& path);
    std::string serialize() const;

    const MockRoom* find_room(const std::string& name) const;
};

// In-process engine speaking the same backend contract as a subprocess
// interpreter. Deterministic except for NOISE rooms.
class MockEngine : public EngineBackend {
public:
    MockEngine(MockWorld world, std::uint64_t seed);

    void send_line(const std::string& line) override;
    std::string read_to_prompt() override;
    bool halted() const override { return halted_; }

private:
    std::string look_text() const;
    std::string handle(const std::string& line);
    const MockObject* find_object(const std::string& normalized_name) const;

    MockWorld world_;
    std::size_t current_ = 0;
    bool halted_ = false;
    std::string pending_;
};

}  // namespace cg
