#include "riddle/service.hpp"

#include "riddle/error.hpp"
#include "riddle/reports.hpp"
#include "riddle/store.hpp"
#include "text.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>

namespace riddle::service {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Repository
// ---------------------------------------------------------------------------

ProjectRepository::ProjectRepository(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) {
        throw Error(ErrorCode::IoFailure, "cannot create project root " + root_.string() + ": " + ec.message());
    }
}

std::vector<std::string> ProjectRepository::list_ids() const {
    std::vector<std::string> ids;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_, ec)) {
        const std::string id = entry.path().filename().string();
        if (entry.is_directory() && id == slugify(id) && fs::exists(entry.path() / kProjectFileName)) {
            ids.push_back(id);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

fs::path ProjectRepository::file_for(const std::string& id) const { return root_ / id / kProjectFileName; }

void ProjectRepository::check_id(const std::string& id) const {
    if (id.empty() || id != slugify(id) || !fs::exists(file_for(id))) {
        throw Error(ErrorCode::ProjectNotFound, "unknown project '" + id + "'");
    }
}

std::shared_mutex& ProjectRepository::mutex_for(const std::string& id) const {
    std::lock_guard guard(registry_mutex_);
    auto& slot = locks_[id];
    if (!slot) slot = std::make_unique<std::shared_mutex>();
    return *slot;
}

Project ProjectRepository::load(const std::string& id) const {
    check_id(id);
    std::shared_lock lock(mutex_for(id));
    return load_project(file_for(id));
}

Project ProjectRepository::create(const std::string& name, const std::optional<AssetContext>& answers) {
    Project project = create_project(name);
    if (answers) set_asset_context(project, *answers, project.created);
    const std::string id = slugify(project.name);
    if (id.empty()) {
        throw Error(ErrorCode::InvalidArgument, "project name must contain at least one letter or digit", "name");
    }
    std::unique_lock lock(mutex_for(id));
    const fs::path dir = root_ / id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
    const fs::path file = file_for(id);
    ProjectLock file_lock(file);
    if (fs::exists(file)) {
        throw Error(ErrorCode::ProjectExists, "project '" + id + "' already exists", "name");
    }
    save_project(project, file);
    return project;
}

Project ProjectRepository::update(const std::string& id, std::uint64_t expected_revision,
                                  const std::function<void(Project&)>& mutate) {
    check_id(id);
    std::unique_lock lock(mutex_for(id));
    const fs::path file = file_for(id);
    ProjectLock file_lock(file);
    Project project = load_project(file);
    if (project.revision != expected_revision) {
        throw Error(ErrorCode::StaleRevision,
                    "revision " + std::to_string(expected_revision) + " is stale; current revision is " +
                        std::to_string(project.revision),
                    "revision");
    }
    const std::uint64_t before = project.revision;
    mutate(project);
    if (project.revision != before) save_project(project, file);
    return project;
}

void ProjectRepository::remove(const std::string& id, std::uint64_t expected_revision) {
    check_id(id);
    std::unique_lock lock(mutex_for(id));
    const fs::path file = file_for(id);
    {
        ProjectLock file_lock(file);
        const Project project = load_project(file);
        if (project.revision != expected_revision) {
            throw Error(ErrorCode::StaleRevision, "revision " + std::to_string(expected_revision) + " is stale",
                        "revision");
        }
        std::error_code ec;
        fs::remove(file, ec);
        if (ec) throw Error(ErrorCode::IoFailure, "cannot remove " + file.string() + ": " + ec.message());
    }
    std::error_code ec;
    fs::remove_all(root_ / id, ec);
}

// ---------------------------------------------------------------------------
// Api
// ---------------------------------------------------------------------------

namespace {

ApiResponse json_response(int status, const json& body) { return {status, "application/json", body.dump()}; }

ApiResponse error_response(int status, std::string_view code, const std::string& message,
                           const std::string& field_path = {}) {
    json body = {{"code", code}, {"message", message}};
    body["field_path"] = field_path.empty() ? json(nullptr) : json(field_path);
    return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string::npos) end = path.size();
        if (end > start) parts.push_back(path.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

json parse_body(const ApiRequest& req) {
    if (detail::is_blank(req.body)) return json::object();
    try {
        json body = json::parse(req.body);
        if (!body.is_object()) throw Error(ErrorCode::InvalidJson, "request body must be a JSON object");
        return body;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidJson, std::string("malformed JSON body: ") + e.what());
    }
}

std::string string_field(const json& body, const char* key, bool required = false) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
        if (required) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'", key);
        return {};
    }
    if (!it->is_string()) throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a string", key);
    return it->get<std::string>();
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
    text = detail::trim(text);
    if (!text.empty() && text.front() == '"' && text.back() == '"' && text.size() >= 2) {
        text = text.substr(1, text.size() - 2);
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::uint64_t revision_of(const ApiRequest& req, const json& body) {
    if (auto it = body.find("revision"); it != body.end()) {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
            throw Error(ErrorCode::InvalidArgument, "revision must be a non-negative integer", "revision");
        }
        return it->get<std::uint64_t>();
    }
    for (const auto& [map, key] : {std::pair{&req.headers, "if-match"}, std::pair{&req.query, "revision"}}) {
        if (auto it = map->find(key); it != map->end()) {
            if (auto v = parse_u64(it->second)) return *v;
            throw Error(ErrorCode::InvalidArgument, "revision must be a non-negative integer", "revision");
        }
    }
    throw Error(ErrorCode::MissingRevision, "mutations require the current project revision", "revision");
}

AssetContext read_context(const json& node) {
    if (!node.is_object()) throw Error(ErrorCode::InvalidArgument, "asset_context must be an object", "asset_context");
    AssetContext ctx;
    ctx.asset_to_secure = string_field(node, "asset_to_secure");
    ctx.threats_in_scope = string_field(node, "threats_in_scope");
    ctx.loss_estimate = string_field(node, "loss_estimate");
    ctx.prevention_budget = string_field(node, "prevention_budget");
    return ctx;
}

std::vector<Source> read_sources(const json& body) {
    std::vector<Source> out;
    auto it = body.find("sources");
    if (it == body.end() || it->is_null()) return out;
    if (!it->is_array()) throw Error(ErrorCode::InvalidArgument, "sources must be an array", "sources");
    for (const json& s : *it) {
        if (!s.is_object()) throw Error(ErrorCode::InvalidArgument, "each source must be an object", "sources");
        Source src{string_field(s, "reference", true), string_field(s, "accessed")};
        if (src.accessed.empty()) src.accessed = format_date(now_utc());
        out.push_back(std::move(src));
    }
    return out;
}

// Accepts {"unit": "...", "value": n}, a string in CLI syntax, or a bare number in the variable's unit.
RawMeasurement read_raw(const json& node, Variable v) {
    if (node.is_string()) return parse_raw_measurement(node.get<std::string>(), v);
    if (node.is_number()) {
        const double x = node.get<double>();
        switch (unit_of(v)) {
        case RawUnit::Seconds: return RawMeasurement::seconds(x);
        case RawUnit::Percent: return RawMeasurement::percent(x);
        case RawUnit::Euros: return RawMeasurement::euros(x);
        case RawUnit::Qualitative: return RawMeasurement::qualitative(static_cast<int>(x));
        }
    }
    if (node.is_object() && node.contains("unit") && node.contains("value") && node["value"].is_number()) {
        const RawUnit unit = parse_unit(string_field(node, "unit", true));
        const double x = node["value"].get<double>();
        switch (unit) {
        case RawUnit::Seconds: return RawMeasurement::seconds(x);
        case RawUnit::Percent: return RawMeasurement::percent(x);
        case RawUnit::Euros: return RawMeasurement::euros(x);
        case RawUnit::Qualitative: return RawMeasurement::qualitative(static_cast<int>(x));
        }
    }
    throw Error(ErrorCode::InvalidMeasurement, "raw must be {unit, value}, a string, or a number", "raw");
}

int int_field(const json& body, const char* key) {
    const json& node = body.at(key);
    if (!node.is_number_integer()) {
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an integer", key);
    }
    return node.get<int>();
}

json band_json(const ScoreBand& band) {
    return {{"index", band.index}, {"low_score", band.low_score}, {"high_score", band.high_score}};
}

json classification_json(int total) {
    const ThreatLevel level = classify_total(total);
    const auto next = points_to_next_level(total);
    json j = {{"total", total}, {"threat_level", level_name(level)}};
    if (next) {
        j["next_level"] = level_name(static_cast<ThreatLevel>(static_cast<int>(level) + 1));
        j["points_to_next_level"] = *next;
    } else {
        j["next_level"] = nullptr;
        j["points_to_next_level"] = nullptr;
    }
    return j;
}

json project_json(const std::string& id, const Project& p) {
    json j = project_document(p)["project"];
    j["id"] = id;
    j["scoring_unlocked"] = p.asset_context.complete();
    return j;
}

class Router {
public:
    Router(ProjectRepository& repo, const ApiRequest& req) : repo_(repo), req_(req), parts_(split_path(req.path)) {}

    ApiResponse dispatch() {
        const auto& p = parts_;
        const std::string& m = req_.method;
        if (p.size() < 2 || p[0] != "api") return not_found();

        if (p.size() == 2 && p[1] == "rubrics" && m == "GET") return json_response(200, rubrics_document());
        if (p.size() == 2 && p[1] == "derive" && m == "POST") return derive();
        if (p.size() == 2 && p[1] == "classify" && m == "POST") return classify();
        if (p.size() == 2 && p[1] == "whatif" && m == "POST") return whatif();
        if (p[1] != "projects") return not_found();

        if (p.size() == 2) {
            if (m == "GET") return list_projects();
            if (m == "POST") return create_project();
            return not_found();
        }
        const std::string& id = p[2];
        if (p.size() == 3) {
            if (m == "GET") return json_response(200, project_json(id, repo_.load(id)));
            if (m == "PUT") return update_project(id);
            if (m == "DELETE") return delete_project(id);
            return not_found();
        }
        const std::string& section = p[3];
        if (p.size() == 4 && m == "GET") {
            if (section == "matrix") return json_response(200, matrix_json(build_matrix(repo_.load(id))));
            if (section == "matrix.csv") return {200, "text/csv; charset=utf-8", matrix_csv(build_matrix(repo_.load(id)))};
            if (section == "sensitivity") {
                return json_response(200, project_sensitivity_json(sensitivity_for_project(repo_.load(id))));
            }
            if (section == "validate") return json_response(200, {{"findings", findings_json(validate_project(repo_.load(id)))}});
            if (section == "report") return {200, "text/markdown; charset=utf-8", markdown_report(repo_.load(id))};
        }
        if (section != "tools") return not_found();
        if (p.size() == 4) {
            if (m == "GET") return list_tools(id);
            if (m == "POST") return add_tool_route(id);
            return not_found();
        }
        const std::string& tool = p[4];
        if (p.size() == 5) {
            if (m == "GET") return get_tool(id, tool);
            if (m == "PUT") return update_tool(id, tool);
            if (m == "DELETE") return delete_tool(id, tool);
            return not_found();
        }
        if (p[5] != "scores") return not_found();
        if (p.size() == 6) {
            if (m == "GET") return get_scores(id, tool);
            if (m == "POST" || m == "PUT") return post_score(id, tool);
            return not_found();
        }
        if (p.size() == 7 && m == "DELETE") return delete_score(id, tool, p[6]);
        return not_found();
    }

private:
    ApiResponse not_found() const {
        return error_response(404, "not_found", "no route for " + req_.method + " " + req_.path);
    }

    ApiResponse derive() const {
        const json body = parse_body(req_);
        const Variable v = parse_variable(string_field(body, "variable", true));
        const DisruptionMode mode = body.contains("mode") ? parse_mode(string_field(body, "mode")) : DisruptionMode::Kinetic;
        if (!is_quantitative(v)) {
            throw Error(ErrorCode::QualitativeVariable,
                        std::string(display_name(v)) + " is qualitative; select a band directly", "variable");
        }
        if (!body.contains("raw")) throw Error(ErrorCode::InvalidArgument, "missing field 'raw'", "raw");
        const RawMeasurement raw = read_raw(body["raw"], v);
        const ScoreBand band = derive_band(v, raw, mode);
        const int score = refine_score(band, raw, rubric_for(v, mode));
        return json_response(200, {{"variable", short_name(v)},
                                   {"mode", mode_name(mode)},
                                   {"raw", {{"unit", unit_name(raw.unit())}, {"value", raw.value()}}},
                                   {"band", band_json(band)},
                                   {"default_score", score}});
    }

    ApiResponse classify() const {
        const json body = parse_body(req_);
        if (!body.contains("total")) throw Error(ErrorCode::InvalidArgument, "missing field 'total'", "total");
        return json_response(200, classification_json(int_field(body, "total")));
    }

    ApiResponse whatif() const {
        const json body = parse_body(req_);
        auto it = body.find("scores");
        if (it == body.end() || !it->is_array() || it->size() != kVariableCount) {
            throw Error(ErrorCode::InvalidArgument, "scores must be an array of seven integers in R,I,Dmg,Dis,L,E,C order",
                        "scores");
        }
        std::array<int, kVariableCount> bands{};
        int total = 0;
        for (std::size_t i = 0; i < kVariableCount; ++i) {
            const json& s = (*it)[i];
            if (!s.is_number_integer() || s.get<int>() < 1 || s.get<int>() > 10) {
                throw Error(ErrorCode::InvalidArgument, "each score must be an integer 1..10",
                            "scores/" + std::to_string(i));
            }
            total += s.get<int>();
            bands[i] = band_index_for_score(s.get<int>());
        }
        json out = classification_json(total);
        out["sensitivity"] = sensitivity_json(sensitivity_for_bands(bands));
        out["sensitivity"].erase("tool_id");
        return json_response(200, out);
    }

    ApiResponse list_projects() const {
        json arr = json::array();
        for (const std::string& id : repo_.list_ids()) {
            try {
                const Project p = repo_.load(id);
                arr.push_back({{"id", id},
                               {"name", p.name},
                               {"revision", p.revision},
                               {"modified", format_iso8601(p.modified)},
                               {"tools", p.tools.size()}});
            } catch (const Error& e) {
                arr.push_back({{"id", id}, {"error", {{"code", e.code_name()}, {"message", e.what()}}}});
            }
        }
        return json_response(200, {{"projects", std::move(arr)}});
    }

    ApiResponse create_project() const {
        const json body = parse_body(req_);
        std::optional<AssetContext> ctx;
        if (auto it = body.find("asset_context"); it != body.end() && !it->is_null()) ctx = read_context(*it);
        const Project p = repo_.create(string_field(body, "name", true), ctx);
        return json_response(201, project_json(slugify(p.name), p));
    }

    ApiResponse update_project(const std::string& id) const {
        const json body = parse_body(req_);
        const std::uint64_t rev = revision_of(req_, body);
        auto it = body.find("asset_context");
        if (it == body.end()) throw Error(ErrorCode::InvalidArgument, "missing field 'asset_context'", "asset_context");
        const AssetContext ctx = read_context(*it);
        const Project p = repo_.update(id, rev, [&](Project& pr) { set_asset_context(pr, ctx); });
        return json_response(200, project_json(id, p));
    }

    ApiResponse delete_project(const std::string& id) const {
        const json body = parse_body(req_);
        repo_.remove(id, revision_of(req_, body));
        return {204, "application/json", ""};
    }

    ApiResponse list_tools(const std::string& id) const {
        const Project p = repo_.load(id);
        json arr = json::array();
        for (const auto& t : p.tools) arr.push_back(tool_json(t));
        return json_response(200, {{"revision", p.revision}, {"tools", std::move(arr)}});
    }

    ApiResponse add_tool_route(const std::string& id) const {
        const json body = parse_body(req_);
        const std::uint64_t rev = revision_of(req_, body);
        ToolObservation obs;
        obs.name = string_field(body, "name", true);
        obs.category = parse_category(string_field(body, "category", true));
        obs.working_principles = string_field(body, "working_principles");
        obs.known_vulnerabilities = string_field(body, "known_vulnerabilities");
        obs.sources = read_sources(body);
        std::string tool_id;
        const Project p = repo_.update(id, rev, [&](Project& pr) { tool_id = add_tool(pr, obs).id; });
        return json_response(201, {{"revision", p.revision}, {"tool", tool_json(find_tool(p, tool_id))}});
    }

    const ToolObservation& tool_by_id(const Project& p, const std::string& tool) const {
        for (const auto& t : p.tools) {
            if (t.id == tool) return t;
        }
        throw Error(ErrorCode::UnknownTool, "unknown tool '" + tool + "'");
    }

    ApiResponse get_tool(const std::string& id, const std::string& tool) const {
        const Project p = repo_.load(id);
        return json_response(200, {{"revision", p.revision}, {"tool", tool_json(tool_by_id(p, tool))}});
    }

    ApiResponse update_tool(const std::string& id, const std::string& tool) const {
        const json body = parse_body(req_);
        const std::uint64_t rev = revision_of(req_, body);
        const std::string principles = string_field(body, "working_principles");
        const std::string vulns = string_field(body, "known_vulnerabilities");
        const std::vector<Source> sources = read_sources(body);
        const Project p = repo_.update(id, rev, [&](Project& pr) {
            tool_by_id(pr, tool);
            update_tool_details(pr, tool, principles, vulns, sources);
        });
        return json_response(200, {{"revision", p.revision}, {"tool", tool_json(tool_by_id(p, tool))}});
    }

    ApiResponse delete_tool(const std::string& id, const std::string& tool) const {
        const json body = parse_body(req_);
        const Project p = repo_.update(id, revision_of(req_, body), [&](Project& pr) { remove_tool(pr, tool); });
        return json_response(200, {{"revision", p.revision}});
    }

    json assessment_view(const Project& p, const std::string& tool) const {
        auto it = p.assessments.find(tool);
        if (it != p.assessments.end()) return assessment_json(it->second);
        ToolAssessment empty;
        empty.tool_id = tool;
        return assessment_json(empty);
    }

    ApiResponse get_scores(const std::string& id, const std::string& tool) const {
        const Project p = repo_.load(id);
        tool_by_id(p, tool);
        return json_response(200, {{"revision", p.revision}, {"assessment", assessment_view(p, tool)}});
    }

    ApiResponse post_score(const std::string& id, const std::string& tool) const {
        const json body = parse_body(req_);
        const std::uint64_t rev = revision_of(req_, body);
        ScoreRequest sr;
        sr.variable = parse_variable(string_field(body, "variable", true));
        const bool has_band = body.contains("band") && !body["band"].is_null();
        const bool has_raw = body.contains("raw") && !body["raw"].is_null();
        if (has_band == has_raw) {
            throw Error(ErrorCode::InvalidArgument, "provide exactly one of 'band' or 'raw'", "band");
        }
        if (has_band) {
            sr.input = BandChoice{int_field(body, "band")};
        } else {
            sr.input = read_raw(body["raw"], sr.variable);
        }
        if (body.contains("score") && !body["score"].is_null()) sr.score = int_field(body, "score");
        sr.motivation = string_field(body, "motivation");
        sr.notes = string_field(body, "notes");
        const Project p = repo_.update(id, rev, [&](Project& pr) {
            tool_by_id(pr, tool);
            record_score(pr, tool, sr);
        });
        return json_response(200, {{"revision", p.revision}, {"assessment", assessment_view(p, tool)}});
    }

    ApiResponse delete_score(const std::string& id, const std::string& tool, const std::string& var) const {
        const json body = parse_body(req_);
        const Variable v = parse_variable(var);
        const Project p = repo_.update(id, revision_of(req_, body), [&](Project& pr) {
            tool_by_id(pr, tool);
            clear_score(pr, tool, v);
        });
        return json_response(200, {{"revision", p.revision}, {"assessment", assessment_view(p, tool)}});
    }

    ProjectRepository& repo_;
    const ApiRequest& req_;
    std::vector<std::string> parts_;
};

} // namespace

ApiResponse Api::handle(const ApiRequest& request) const {
    try {
        return Router(repo_, request).dispatch();
    } catch (const Error& e) {
        return error_response(http_status(e.code()), e.code_name(), e.what(), e.field_path());
    } catch (const json::exception& e) {
        return error_response(400, "invalid_argument", std::string("malformed request: ") + e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

// ---------------------------------------------------------------------------
// HttpServer
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>R.I.D.D.L.E. + (C) workbench</title></head>
<body>
<h1>R.I.D.D.L.E. + (C) workbench</h1>
<p>The browser workbench is not bundled with this server. Start it with <code>--ui-dir</code> pointing at the built assets.</p>
<p>The JSON API is available under <code>/api/</code>: <code>/api/rubrics</code>, <code>/api/derive</code>,
<code>/api/classify</code>, <code>/api/whatif</code>, <code>/api/projects</code>.</p>
<p><strong>There is no authentication.</strong> Bind only to a trusted interface.</p>
</body></html>
)";

ApiRequest to_api_request(const httplib::Request& req) {
    ApiRequest out;
    out.method = req.method;
    out.path = req.path;
    out.body = req.body;
    for (const auto& [k, v] : req.headers) out.headers[detail::to_lower(k)] = v;
    for (const auto& [k, v] : req.params) out.query[k] = v;
    return out;
}

} // namespace

struct HttpServer::Impl {
    Api& api;
    ServerOptions options;
    httplib::Server server;
    std::thread thread;

    Impl(Api& a, ServerOptions o) : api(a), options(std::move(o)) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            const ApiResponse r = api.handle(to_api_request(req));
            res.status = r.status;
            if (!r.body.empty() || r.status != 204) res.set_content(r.body, r.content_type);
        };
        const char* pattern = R"(/api/.*)";
        server.Get(pattern, handler);
        server.Post(pattern, handler);
        server.Put(pattern, handler);
        server.Delete(pattern, handler);

        bool mounted = false;
        if (options.ui_dir) mounted = server.set_mount_point("/", options.ui_dir->string());
        if (!mounted) {
            server.Get("/", [](const httplib::Request&, httplib::Response& res) {
                res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
            });
        }
    }

    int bind() {
        if (options.port == 0) {
            const int port = server.bind_to_any_port(options.address);
            if (port < 0) throw Error(ErrorCode::IoFailure, "cannot bind " + options.address);
            return port;
        }
        if (!server.bind_to_port(options.address, options.port)) {
            throw Error(ErrorCode::IoFailure,
                        "cannot bind " + options.address + ":" + std::to_string(options.port));
        }
        return options.port;
    }
};

HttpServer::HttpServer(Api& api, ServerOptions options) : impl_(std::make_unique<Impl>(api, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start() {
    const int port = impl_->bind();
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void HttpServer::run() {
    impl_->bind();
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

} // namespace riddle::service
