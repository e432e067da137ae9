#include "latfox/service.hpp"

#include "latfox/cxt.hpp"
#include "latfox/errors.hpp"
#include "latfox/export.hpp"
#include "latfox/ifox.hpp"
#include "latfox/layout.hpp"

#include <httplib.h>
#include <json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace latfox::service {

using nlohmann::json;

namespace {

Response error(int status, const std::string& message) {
    return Response{status, json{{"error", message}}.dump(), std::nullopt};
}

std::string fresh_id() {
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    std::ostringstream out;
    out << std::hex << rng();
    return out.str();
}

bool looks_like_json(std::string_view body, std::string_view content_type) {
    if (content_type.find("json") != std::string_view::npos) return true;
    if (content_type.find("text/plain") != std::string_view::npos) return false;
    auto first = body.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && body[first] == '{';
}

} // namespace

std::optional<std::uint64_t> parse_if_match(std::optional<std::string_view> header) {
    if (!header) return std::nullopt;
    std::string_view v = *header;
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    if (v.empty() || v == "*") return std::nullopt;
    if (v.substr(0, 2) == "W/") v.remove_prefix(2);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos)
        throw Error("malformed If-Match header");
    return std::stoull(std::string(v));
}

std::shared_ptr<const DiagramState> SessionStore::Session::load() const {
    std::lock_guard lock(swap);
    return current;
}

void SessionStore::Session::store(std::shared_ptr<const DiagramState> next) {
    std::lock_guard lock(swap);
    current = std::move(next);
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionStore::size() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

std::shared_ptr<const DiagramState> SessionStore::state(const std::string& id) const {
    auto session = find(id);
    return session ? session->load() : nullptr;
}

Response SessionStore::create(std::string_view body, std::string_view content_type) {
    DiagramState state;
    try {
        if (looks_like_json(body, content_type)) {
            state = state_from_document_text(body);
        } else {
            state = ifox::build_state(parse_cxt(body));
        }
    } catch (const Error& e) {
        return error(400, e.what());
    }
    auto session = std::make_shared<Session>();
    session->current = std::make_shared<const DiagramState>(std::move(state));
    std::string id;
    {
        std::unique_lock lock(sessions_mutex_);
        do id = fresh_id();
        while (sessions_.count(id));
        sessions_.emplace(id, session);
    }
    const auto& current = *session->current;
    return Response{201, json{{"id", id}, {"version", current.version}, {"document", document_json(current)}}.dump(),
                    current.version};
}

Response SessionStore::get(const std::string& id) const {
    auto session = find(id);
    if (!session) return error(404, "unknown session '" + id + "'");
    auto current = session->load();
    return Response{200, document_json(*current).dump(), current->version};
}

template <class Fn>
Response SessionStore::mutate(const std::string& id, std::optional<std::string_view> if_match, Fn&& fn) {
    auto session = find(id);
    if (!session) return error(404, "unknown session '" + id + "'");
    std::optional<std::uint64_t> expected;
    try {
        expected = parse_if_match(if_match);
    } catch (const Error& e) {
        return error(400, e.what());
    }
    std::lock_guard writer(session->writer);
    auto current = session->load();
    if (expected && *expected != current->version)
        return error(409, "version mismatch: current version is " + std::to_string(current->version));
    json payload;
    DiagramState next;
    try {
        std::tie(next, payload) = fn(*current);
    } catch (const NameCollision& e) {
        return error(409, e.what());
    } catch (const NotFound& e) {
        return error(404, e.what());
    } catch (const Error& e) {
        return error(400, e.what());
    } catch (const ContractViolation& e) {
        return error(400, e.what());
    }
    auto stored = std::make_shared<const DiagramState>(std::move(next));
    payload["document"] = document_json(*stored);
    payload["version"] = stored->version;
    const auto version = stored->version;
    session->store(std::move(stored));
    return Response{200, payload.dump(), version};
}

Response SessionStore::insert(const std::string& id, std::string_view body, std::optional<std::string_view> if_match) {
    json request;
    try {
        request = json::parse(body);
        if (!request.is_object() || !request.contains("name") || !request["name"].is_string() ||
            !request.contains("extent") || !request["extent"].is_array())
            return error(400, "expected {\"name\": string, \"extent\": [object names]}");
    } catch (const json::exception& e) {
        return error(400, std::string("malformed request: ") + e.what());
    }
    return mutate(id, if_match, [&](const DiagramState& state) {
        std::vector<std::string> objects;
        try {
            objects = request["extent"].get<std::vector<std::string>>();
        } catch (const json::exception&) {
            throw Error("extent must be an array of object names");
        }
        ObjectSet extent;
        try {
            extent = state.context.object_set(objects);
        } catch (const NotFound& e) {
            throw Error(e.what()); // unknown objects are a bad request, not a missing resource
        }
        auto [next, changes] = ifox::insert_column(state, AttributeColumn{request["name"].get<std::string>(), extent});
        json payload{{"changeset", changeset_json(changes, next.context)}};
        return std::pair{std::move(next), std::move(payload)};
    });
}

Response SessionStore::remove(const std::string& id, const std::string& attribute,
                              std::optional<std::string_view> if_match) {
    return mutate(id, if_match, [&](const DiagramState& state) {
        auto [next, changes] = ifox::remove_column(state, attribute);
        json payload{{"changeset", changeset_json(changes, next.context)}};
        return std::pair{std::move(next), std::move(payload)};
    });
}

Response SessionStore::set_seed(const std::string& id, const std::string& attribute, std::string_view body,
                                std::optional<std::string_view> if_match) {
    Vec2 seed;
    try {
        const auto j = json::parse(body);
        if (j.is_array() && j.size() == 2) seed = Vec2{j[0].get<double>(), j[1].get<double>()};
        else if (j.is_object()) seed = Vec2{j.at("x").get<double>(), j.at("y").get<double>()};
        else return error(400, "expected {\"x\": number, \"y\": number} or [x, y]");
    } catch (const json::exception& e) {
        return error(400, std::string("malformed seed: ") + e.what());
    }
    return mutate(id, if_match, [&](const DiagramState& state) {
        DiagramState next = state;
        latfox::set_seed(next, attribute, seed);
        next.version = state.version + 1;
        return std::pair{std::move(next), json::object()};
    });
}

void SessionStore::snapshot(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::map<std::string, std::shared_ptr<Session>> copy;
    {
        std::shared_lock lock(sessions_mutex_);
        copy = sessions_;
    }
    for (const auto& [id, session] : copy) {
        std::ofstream out(dir / (id + ".json"));
        out << export_json(*session->load());
        if (!out) throw Error("could not write snapshot for session " + id);
    }
}

void mount(httplib::Server& server, SessionStore& store) {
    auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        if (r.version) res.set_header("ETag", "\"" + std::to_string(*r.version) + "\"");
        res.set_content(r.body, "application/json");
    };
    // Owns the header text; the store takes a view of it.
    auto if_match = [](const httplib::Request& req) -> std::optional<std::string> {
        if (!req.has_header("If-Match")) return std::nullopt;
        return req.get_header_value("If-Match");
    };
    auto view = [](const std::optional<std::string>& h) -> std::optional<std::string_view> {
        if (!h) return std::nullopt;
        return std::string_view(*h);
    };

    server.Post("/contexts", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.create(req.body, req.get_header_value("Content-Type")));
    });
    server.Get(R"(/contexts/([^/]+)/diagram)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.get(req.matches[1]));
    });
    server.Post(R"(/contexts/([^/]+)/attributes)",
                [&store, reply, if_match, view](const httplib::Request& req, httplib::Response& res) {
                    const auto header = if_match(req);
                    reply(res, store.insert(req.matches[1], req.body, view(header)));
                });
    server.Delete(R"(/contexts/([^/]+)/attributes/([^/]+))",
                  [&store, reply, if_match, view](const httplib::Request& req, httplib::Response& res) {
                      const auto header = if_match(req);
                      reply(res, store.remove(req.matches[1], req.matches[2], view(header)));
                  });
    server.Put(R"(/contexts/([^/]+)/seeds/([^/]+))",
               [&store, reply, if_match, view](const httplib::Request& req, httplib::Response& res) {
                   const auto header = if_match(req);
                   reply(res, store.set_seed(req.matches[1], req.matches[2], req.body, view(header)));
               });
}

int serve(const std::string& host, int port, const std::optional<std::filesystem::path>& snapshot_dir) {
    // Route termination signals to a waiting thread instead of a handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    SessionStore store;
    httplib::Server server;
    mount(server, store);

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });

    if (!server.bind_to_port(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
        return 2;
    }
    std::cerr << "listening on " << host << ":" << port << "\n";
    server.listen_after_bind();
    waiter.join();

    if (snapshot_dir) {
        try {
            store.snapshot(*snapshot_dir);
            std::cerr << "wrote " << store.size() << " session(s) to " << snapshot_dir->string() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "snapshot failed: " << e.what() << "\n";
            return 2;
        }
    }
    return 0;
}

} // namespace latfox::service
