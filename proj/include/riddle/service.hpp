#pragma once

#include "riddle/assessment.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

namespace riddle::service {

/// Projects stored as `<root>/<id>/riddle.json`; the id is the slug of the project name.
/// Reads share a per-project lock, writes hold it exclusively and also take the
/// on-disk advisory lock so CLI writers are excluded.
class ProjectRepository {
public:
    explicit ProjectRepository(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    std::vector<std::string> list_ids() const;
    std::filesystem::path file_for(const std::string& id) const;

    /// Throws ProjectNotFound.
    Project load(const std::string& id) const;

    /// Throws ProjectExists when the id is taken.
    Project create(const std::string& name, const std::optional<AssetContext>& answers);

    /// Applies `mutate` when `expected_revision` matches the stored revision (StaleRevision otherwise)
    /// and saves the result if the mutation changed the revision.
    Project update(const std::string& id, std::uint64_t expected_revision, const std::function<void(Project&)>& mutate);

    void remove(const std::string& id, std::uint64_t expected_revision);

private:
    std::shared_mutex& mutex_for(const std::string& id) const;
    void check_id(const std::string& id) const;

    std::filesystem::path root_;
    mutable std::mutex registry_mutex_;
    mutable std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;
};

struct ApiRequest {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> headers; // lower-case names
    std::map<std::string, std::string> query;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Transport-independent request router. All arithmetic is delegated to the core library.
class Api {
public:
    explicit Api(ProjectRepository& repository) : repo_(repository) {}

    ApiResponse handle(const ApiRequest& request) const;

private:
    ProjectRepository& repo_;
};

struct ServerOptions {
    std::string address = "127.0.0.1";
    int port = 8080;
    std::optional<std::filesystem::path> ui_dir;
};

/// cpp-httplib front end serving /api/* and the workbench assets at /.
class HttpServer {
public:
    HttpServer(Api& api, ServerOptions options);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds (port 0 picks a free port) and serves on a background thread; returns the bound port.
    int start();
    /// Binds and serves on the calling thread until stop().
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace riddle::service
