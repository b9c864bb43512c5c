#include "cg/engine.hpp"

#include "cg/mock_world.hpp"
#include "cg/text.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cg {

namespace {

std::string read_file_bytes(const std::string& path, const std::string& game_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SessionError(ErrorKind::FileMissing,
                           "story file missing for " + game_id + ": " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// External interpreter driven over pipes: one command line in, output
// consumed until the prompt marker appears at the start of the last line.
class SubprocessEngine : public EngineBackend {
public:
    SubprocessEngine(const std::string& exe, const std::string& story_path,
                     std::string prompt_marker, std::chrono::milliseconds timeout,
                     const std::string& game_id)
        : prompt_(std::move(prompt_marker)), timeout_(timeout) {
        int to_child[2], from_child[2], status_pipe[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0 || pipe(status_pipe) != 0) {
            throw SessionError(ErrorKind::EngineStartFailure, "pipe failed for " + game_id);
        }
        fcntl(status_pipe[1], F_SETFD, FD_CLOEXEC);
        pid_ = fork();
        if (pid_ < 0) {
            throw SessionError(ErrorKind::EngineStartFailure, "fork failed for " + game_id);
        }
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]); close(to_child[1]);
            close(from_child[0]); close(from_child[1]);
            close(status_pipe[0]);
            execlp(exe.c_str(), exe.c_str(), story_path.c_str(), (char*)nullptr);
            int err = errno;
            ssize_t ignored = write(status_pipe[1], &err, sizeof(err));
            (void)ignored;
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        close(status_pipe[1]);
        in_fd_ = to_child[1];
        out_fd_ = from_child[0];
        int exec_errno = 0;
        if (read(status_pipe[0], &exec_errno, sizeof(exec_errno)) > 0) {
            close(status_pipe[0]);
            cleanup();
            throw SessionError(ErrorKind::EngineStartFailure,
                               "cannot start engine '" + exe + "' for " + game_id + ": " +
                                   std::strerror(exec_errno));
        }
        close(status_pipe[0]);
    }

    ~SubprocessEngine() override { cleanup(); }

    void send_line(const std::string& line) override {
        std::string data = line + "\n";
        ssize_t n = write(in_fd_, data.data(), data.size());
        if (n < 0) halted_ = true;
    }

    std::string read_to_prompt() override {
        if (halted_) return take_buffer();
        auto deadline = std::chrono::steady_clock::now() + timeout_;
        while (true) {
            std::string out;
            if (prompt_reached(out)) return out;
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            if (left.count() <= 0) {
                throw SessionError(ErrorKind::Timeout, "engine unresponsive");
            }
            struct pollfd pfd{out_fd_, POLLIN, 0};
            int r = poll(&pfd, 1, static_cast<int>(left.count()));
            if (r == 0) throw SessionError(ErrorKind::Timeout, "engine unresponsive");
            char chunk[4096];
            ssize_t n = read(out_fd_, chunk, sizeof(chunk));
            if (n <= 0) {
                halted_ = true;
                return take_buffer();
            }
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    bool halted() const override { return halted_; }

private:
    // True when the last (unterminated) line is exactly the prompt marker,
    // modulo trailing spaces. Moves everything before it into `out`.
    bool prompt_reached(std::string& out) {
        std::size_t nl = buffer_.rfind('\n');
        std::size_t line_start = nl == std::string::npos ? 0 : nl + 1;
        std::string_view tail(buffer_.data() + line_start, buffer_.size() - line_start);
        while (!tail.empty() && tail.back() == ' ') tail.remove_suffix(1);
        if (tail != prompt_) return false;
        out = buffer_.substr(0, nl == std::string::npos ? 0 : nl);
        buffer_.clear();
        return true;
    }

    std::string take_buffer() {
        std::string out = std::move(buffer_);
        buffer_.clear();
        return out;
    }

    void cleanup() {
        if (in_fd_ >= 0) close(in_fd_);
        if (out_fd_ >= 0) close(out_fd_);
        in_fd_ = out_fd_ = -1;
        if (pid_ > 0) {
            kill(pid_, SIGKILL);
            waitpid(pid_, nullptr, 0);
            pid_ = -1;
        }
    }

    std::string prompt_;
    std::chrono::milliseconds timeout_;
    pid_t pid_ = -1;
    int in_fd_ = -1;
    int out_fd_ = -1;
    std::string buffer_;
    bool halted_ = false;
};

}  // namespace

StoryRef make_story_ref(std::string game_id, std::string path) {
    std::string bytes = read_file_bytes(path, game_id);
    return {std::move(game_id), std::move(path), hex64(fnv1a64(bytes))};
}

std::string key_string(const LocationKey& key) {
    return key.room_name + "|" + key.body_digest;
}

LocationKey parse_location_key(const std::string& look_text) {
    std::istringstream in(look_text);
    std::string line;
    std::string room_name;
    std::string body;
    while (std::getline(in, line)) {
        std::string trimmed = collapse_whitespace(line);
        if (room_name.empty()) {
            if (!trimmed.empty()) room_name = trimmed;
        } else {
            body += line;
            body += "\n";
        }
    }
    if (room_name.empty()) {
        throw SessionError(ErrorKind::UnparseableLook, "empty look output");
    }
    return {room_name, short_digest(collapse_whitespace(body))};
}

Session Session::open(const StoryRef& story, const SessionConfig& cfg) {
    std::string bytes = read_file_bytes(story.path, story.game_id);
    if (hex64(fnv1a64(bytes)) != story.checksum) {
        throw SessionError(ErrorKind::ChecksumMismatch,
                           "checksum mismatch for " + story.game_id + ": " + story.path);
    }
    Session session;
    session.story_ = story;
    session.cfg_ = cfg;
    if (cfg.engine_path.empty()) {
        MockWorld world;
        try {
            world = MockWorld::parse(bytes);
        } catch (const std::exception& e) {
            throw SessionError(ErrorKind::EngineStartFailure,
                               "bad mock world for " + story.game_id + ": " + e.what());
        }
        std::uint64_t seed = cfg.rng_seed;
        session.make_backend_ = [world, seed]() -> std::unique_ptr<EngineBackend> {
            return std::make_unique<MockEngine>(world, seed);
        };
    } else {
        std::string exe = cfg.engine_path;
        std::string path = story.path;
        std::string prompt = cfg.prompt_marker;
        auto timeout = cfg.command_timeout;
        std::string game_id = story.game_id;
        session.make_backend_ = [=]() -> std::unique_ptr<EngineBackend> {
            return std::make_unique<SubprocessEngine>(exe, path, prompt, timeout, game_id);
        };
    }
    session.backend_ = session.make_backend_();
    session.initial_ = {session.backend_->read_to_prompt(), 0, session.backend_->halted()};
    session.halted_ = session.initial_.halted;
    return session;
}

EngineResponse Session::send_command(const std::string& cmd) {
    if (halted_) {
        throw SessionError(ErrorKind::SessionHalted, "session halted for " + story_.game_id);
    }
    if (move_index_ >= cfg_.max_moves) {
        throw SessionError(ErrorKind::MoveBudgetExhausted,
                           "move budget exhausted for " + story_.game_id);
    }
    backend_->send_line(cmd);
    EngineResponse resp;
    resp.raw_text = backend_->read_to_prompt();
    resp.move_index = ++move_index_;
    halted_ = backend_->halted();
    resp.halted = halted_;
    return resp;
}

EngineResponse Session::reset_and_replay(const std::vector<std::string>& prefix) {
    if (static_cast<int>(prefix.size()) >= cfg_.max_moves) {
        throw SessionError(ErrorKind::MoveBudgetExhausted,
                           "prefix longer than move budget for " + story_.game_id);
    }
    backend_ = make_backend_();
    move_index_ = 0;
    EngineResponse resp{backend_->read_to_prompt(), 0, backend_->halted()};
    halted_ = resp.halted;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        try {
            resp = send_command(prefix[i]);
        } catch (const SessionError& e) {
            throw SessionError(e.kind(),
                               std::string(e.what()) + " (replay prefix index " +
                                   std::to_string(i) + ")",
                               static_cast<int>(i));
        }
    }
    return resp;
}

LocationKey Session::fingerprint_location() {
    EngineResponse resp = send_command("look");
    return parse_location_key(resp.raw_text);
}

bool detect_nondeterminism(const StoryRef& story, const SessionConfig& cfg,
                           const std::vector<std::string>& probe_prefix) {
    Session session = Session::open(story, cfg);
    EngineResponse first = session.reset_and_replay(probe_prefix);
    EngineResponse second = session.reset_and_replay(probe_prefix);
    return first.raw_text != second.raw_text;
}

}  // namespace cg
