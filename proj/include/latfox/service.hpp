#pragma once

// Session-based HTTP front end. Each session holds one diagram; mutations
// on a session are serialized and versioned (ETag / If-Match).
//
//   POST   /contexts                      CXT text or diagram JSON -> 201
//   GET    /contexts/{id}/diagram
//   POST   /contexts/{id}/attributes      {"name": ..., "extent": [objects]}
//   DELETE /contexts/{id}/attributes/{name}
//   PUT    /contexts/{id}/seeds/{name}    {"x": .., "y": ..} or [x, y]

#include "latfox/diagram_state.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace latfox::service {

struct Response {
    int status = 200;
    std::string body;
    std::optional<std::uint64_t> version; // sent as ETag
};

/// Parses an If-Match value: `"3"`, `3` or `W/"3"`. `*` and absent headers
/// mean "any version". Throws Error on anything else.
std::optional<std::uint64_t> parse_if_match(std::optional<std::string_view> header);

class SessionStore {
public:
    SessionStore() = default;
    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    Response create(std::string_view body, std::string_view content_type = {});
    Response get(const std::string& id) const;
    Response insert(const std::string& id, std::string_view body, std::optional<std::string_view> if_match);
    Response remove(const std::string& id, const std::string& attribute, std::optional<std::string_view> if_match);
    Response set_seed(const std::string& id, const std::string& attribute, std::string_view body,
                      std::optional<std::string_view> if_match);

    std::size_t size() const;
    /// Current state of a session, or null.
    std::shared_ptr<const DiagramState> state(const std::string& id) const;

    /// Writes every session as `<dir>/<id>.json`.
    void snapshot(const std::filesystem::path& dir) const;

private:
    struct Session {
        std::mutex writer;             // held for a whole mutation
        mutable std::mutex swap;       // held only to read or replace `current`
        std::shared_ptr<const DiagramState> current;

        std::shared_ptr<const DiagramState> load() const;
        void store(std::shared_ptr<const DiagramState> next);
    };

    std::shared_ptr<Session> find(const std::string& id) const;

    template <class Fn>
    Response mutate(const std::string& id, std::optional<std::string_view> if_match, Fn&& fn);

    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// Registers the routes above on `server`.
void mount(httplib::Server& server, SessionStore& store);

/// Serves until SIGINT/SIGTERM; then snapshots to `snapshot_dir` if given.
/// Returns a process exit code.
int serve(const std::string& host, int port, const std::optional<std::filesystem::path>& snapshot_dir);

} // namespace latfox::service
