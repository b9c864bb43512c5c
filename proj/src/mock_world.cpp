#include "cg/mock_world.hpp"

#include "cg/text.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cg {

namespace {

std::string first_token(const std::string& line, std::string& rest) {
    std::size_t i = line.find(' ');
    if (i == std::string::npos) {
        rest.clear();
        return line;
    }
    rest = line.substr(i + 1);
    return line.substr(0, i);
}

}  // namespace

MockWorld MockWorld::parse(const std::string& text) {
    MockWorld world;
    std::istringstream in(text);
    std::string line;
    MockRoom* room = nullptr;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        std::string trimmed = collapse_whitespace(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::string rest;
        std::string directive = first_token(trimmed, rest);
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("mock world line " + std::to_string(line_no) + ": " + why);
        };
        if (directive == "ROOM") {
            if (rest.empty()) fail("ROOM needs a name");
            world.rooms.push_back({});
            room = &world.rooms.back();
            room->name = rest;
        } else if (!room) {
            fail("directive before first ROOM");
        } else if (directive == "DESC") {
            if (!room->desc.empty()) room->desc += "\n";
            room->desc += rest;
        } else if (directive == "EXIT") {
            std::string target;
            std::string dir = first_token(rest, target);
            if (dir.empty() || target.empty()) fail("EXIT needs <dir> <room>");
            room->exits[to_lower(dir)] = target;
        } else if (directive == "OBJECT") {
            // name runs up to the TRIVIAL / RESPONSE keyword
            MockObject obj;
            std::string tail = rest;
            std::string name;
            while (true) {
                std::string next;
                std::string tok = first_token(tail, next);
                if (tok == "TRIVIAL") {
                    obj.trivial = true;
                    break;
                }
                if (tok == "RESPONSE") {
                    obj.response = next;
                    break;
                }
                if (tok.empty()) fail("OBJECT needs TRIVIAL or RESPONSE");
                if (!name.empty()) name += " ";
                name += tok;
                tail = next;
            }
            if (name.empty()) fail("OBJECT needs a name");
            obj.name = normalize_surface(name);
            room->objects.push_back(std::move(obj));
        } else if (directive == "FATAL") {
            room->fatal = true;
        } else if (directive == "NOISE") {
            room->noisy = true;
        } else {
            fail("unknown directive " + directive);
        }
    }
    if (world.rooms.empty()) throw std::runtime_error("mock world has no rooms");
    return world;
}

MockWorld MockWorld::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open mock world: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string MockWorld::serialize() const {
    std::ostringstream out;
    for (const auto& room : rooms) {
        out << "ROOM " << room.name << "\n";
        if (!room.desc.empty()) {
            std::istringstream lines(room.desc);
            std::string l;
            while (std::getline(lines, l)) out << "DESC " << l << "\n";
        }
        for (const auto& [dir, target] : room.exits) out << "EXIT " << dir << " " << target << "\n";
        for (const auto& obj : room.objects) {
            if (obj.trivial)
                out << "OBJECT " << obj.name << " TRIVIAL\n";
            else
                out << "OBJECT " << obj.name << " RESPONSE " << obj.response << "\n";
        }
        if (room.fatal) out << "FATAL\n";
        if (room.noisy) out << "NOISE\n";
    }
    return out.str();
}

const MockRoom* MockWorld::find_room(const std::string& name) const {
    for (const auto& room : rooms) {
        if (room.name == name) return &room;
    }
    return nullptr;
}

MockEngine::MockEngine(MockWorld world, std::uint64_t seed) : world_(std::move(world)) {
    (void)seed;  // the mock is deterministic apart from NOISE rooms
    pending_ = look_text();
}

std::string MockEngine::look_text() const {
    const MockRoom& room = world_.rooms[current_];
    std::string out = room.name + "\n" + room.desc;
    if (room.noisy) {
        std::random_device rd;
        out += "\nA stray mote flickers: " + hex64(rd()).substr(8);
    }
    return out;
}

const MockObject* MockEngine::find_object(const std::string& normalized_name) const {
    for (const auto& obj : world_.rooms[current_].objects) {
        if (obj.name == normalized_name) return &obj;
    }
    return nullptr;
}

void MockEngine::send_line(const std::string& line) {
    if (halted_) throw std::logic_error("send_line on halted mock engine");
    pending_ = handle(normalize_surface(line));
}

std::string MockEngine::read_to_prompt() {
    return std::move(pending_);
}

std::string MockEngine::handle(const std::string& cmd) {
    if (cmd == "look" || cmd == "l") return look_text();
    if (cmd == "wait" || cmd == "z") return "Time passes.";

    std::string rest;
    std::string verb = first_token(cmd, rest);
    std::string dir = verb == "go" ? rest : cmd;
    const MockRoom& room = world_.rooms[current_];
    auto exit = room.exits.find(dir);
    if (exit != room.exits.end()) {
        for (std::size_t i = 0; i < world_.rooms.size(); ++i) {
            if (world_.rooms[i].name == exit->second) {
                current_ = i;
                break;
            }
        }
        if (world_.rooms[current_].fatal) {
            halted_ = true;
            return look_text() + "\n\n*** You have died ***";
        }
        return look_text();
    }
    static const std::vector<std::string> directions = {
        "north", "south", "east",  "west", "northeast", "northwest",
        "southeast", "southwest", "up", "down", "in", "out"};
    for (const auto& d : directions) {
        if (dir == d) return "You can't go that way.";
    }

    if (verb == "examine" || verb == "x") {
        if (rest.empty()) return "You see nothing special.";
        const MockObject* obj = find_object(rest);
        if (!obj) return "You can't see any such thing.";
        if (obj->trivial) return "You see nothing special about the " + obj->name + ".";
        return obj->response;
    }
    if (verb == "take" || verb == "open" || verb == "push" || verb == "pull") {
        if (!rest.empty() && find_object(rest)) return "You fiddle with the " + rest + ".";
        return "You can't see any such thing.";
    }
    return "That's not a verb I recognise.";
}

}  // namespace cg
