#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cg {

struct StoryRef {
    std::string game_id;
    std::string path;
    std::string checksum;  // hex digest of file bytes
};

// Computes the checksum from the file as it is now.
StoryRef make_story_ref(std::string game_id, std::string path);

struct SessionConfig {
    std::uint64_t rng_seed = 0;
    int max_moves = 100000;
    std::string prompt_marker = ">";
    std::chrono::milliseconds command_timeout{5000};
    // Path to an external interpreter executable. Empty selects the
    // built-in mock engine and story.path is read as a mock-world file.
    std::string engine_path;
};

struct EngineResponse {
    std::string raw_text;    // everything emitted since the previous prompt
    int move_index = 0;      // commands sent so far in this session
    bool halted = false;     // engine ended the story
};

struct LocationKey {
    std::string room_name;    // first non-empty line of `look`, trimmed
    std::string body_digest;  // 8 hex chars over the whitespace-collapsed body

    friend bool operator==(const LocationKey&, const LocationKey&) = default;
};

// "room_name|digest", used as a map key and in diagnostics.
std::string key_string(const LocationKey& key);

// Splits a `look` response into (room_name, body_digest). Throws
// SessionError{UnparseableLook} on empty text.
LocationKey parse_location_key(const std::string& look_text);

enum class ErrorKind {
    FileMissing,
    ChecksumMismatch,
    EngineStartFailure,
    Timeout,
    SessionHalted,
    MoveBudgetExhausted,
    UnparseableLook,
};

class SessionError : public std::runtime_error {
public:
    SessionError(ErrorKind kind, std::string message, int prefix_index = -1)
        : std::runtime_error(std::move(message)), kind_(kind), prefix_index_(prefix_index) {}

    ErrorKind kind() const { return kind_; }
    // Index of the failing command when the error happened during replay.
    int prefix_index() const { return prefix_index_; }

private:
    ErrorKind kind_;
    int prefix_index_;
};

// One live engine instance. read_to_prompt consumes output until the
// configured prompt marker and returns it with the prompt stripped.
class EngineBackend {
public:
    virtual ~EngineBackend() = default;
    virtual void send_line(const std::string& line) = 0;
    virtual std::string read_to_prompt() = 0;
    virtual bool halted() const = 0;
};

// Single-owner session over one game. Not thread-safe; distinct sessions
// are fully independent.
class Session {
public:
    static Session open(const StoryRef& story, const SessionConfig& cfg);

    const EngineResponse& initial() const { return initial_; }
    EngineResponse send_command(const std::string& cmd);
    // Restarts the engine and resends the prefix. Returns the response to
    // the last prefix command, or the initial output for an empty prefix.
    EngineResponse reset_and_replay(const std::vector<std::string>& prefix);
    // Issues `look` (one move) and fingerprints the output.
    LocationKey fingerprint_location();

    int move_index() const { return move_index_; }
    bool halted() const { return halted_; }
    const StoryRef& story() const { return story_; }
    const SessionConfig& config() const { return cfg_; }

private:
    Session() = default;

    StoryRef story_;
    SessionConfig cfg_;
    std::function<std::unique_ptr<EngineBackend>()> make_backend_;
    std::unique_ptr<EngineBackend> backend_;
    EngineResponse initial_;
    int move_index_ = 0;
    bool halted_ = false;
};

// Replays the prefix twice from a fresh engine with the same seed; true
// iff the final outputs differ. Flagged games are excluded from probing.
bool detect_nondeterminism(const StoryRef& story, const SessionConfig& cfg,
                           const std::vector<std::string>& probe_prefix);

}  // namespace cg
