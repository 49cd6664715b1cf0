#include "riddle/store.hpp"

#include "riddle/error.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

namespace riddle {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string errno_text() { return std::strerror(errno); }

// Walks a document while tracking the JSON-pointer path for error messages.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

    void expect_object(std::initializer_list<std::string_view> allowed) const {
        if (!node_.is_object()) fail("", "expected an object");
        for (const auto& [key, value] : node_.items()) {
            bool known = false;
            for (std::string_view a : allowed) known = known || key == a;
            if (!known) {
                throw Error(ErrorCode::SchemaVersionMismatch,
                            "field '" + key + "' is not part of project schema v" + std::to_string(kSchemaVersion),
                            path_ + "/" + key);
            }
        }
    }

    Reader at(std::string_view key) const {
        auto it = node_.find(key);
        if (it == node_.end()) fail("/" + std::string(key), "missing field");
        return Reader(*it, path_ + "/" + std::string(key));
    }

    Reader at(std::size_t index) const { return Reader(node_.at(index), path_ + "/" + std::to_string(index)); }

    bool has(std::string_view key) const { return node_.contains(key); }

    std::string str() const {
        if (!node_.is_string()) fail("", "expected a string");
        return node_.get<std::string>();
    }

    std::int64_t integer() const {
        if (!node_.is_number_integer()) fail("", "expected an integer");
        return node_.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer() const {
        if (!node_.is_number_unsigned() && !(node_.is_number_integer() && node_.get<std::int64_t>() >= 0)) {
            fail("", "expected a non-negative integer");
        }
        return node_.get<std::uint64_t>();
    }

    double number() const {
        if (!node_.is_number()) fail("", "expected a number");
        return node_.get<double>();
    }

    std::size_t array_size() const {
        if (!node_.is_array()) fail("", "expected an array");
        return node_.size();
    }

    const json& raw() const { return node_; }

    [[noreturn]] void fail(const std::string& suffix, const std::string& what) const {
        const std::string where = path_ + suffix;
        throw Error(ErrorCode::CorruptDocument, what + " at " + (where.empty() ? "/" : where), where);
    }

    // Converts domain parse errors into CorruptDocument at this path.
    template <typename F>
    auto convert(F&& f) const -> decltype(f()) {
        try {
            return f();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CorruptDocument || e.code() == ErrorCode::SchemaVersionMismatch) throw;
            fail("", e.what());
        }
    }

private:
    const json& node_;
    std::string path_;
};

json score_json(const VariableScore& s) {
    json j;
    j["variable"] = short_name(s.variable);
    j["band"] = s.band;
    j["score"] = s.score;
    j["motivation"] = s.motivation;
    j["notes"] = s.notes;
    if (s.raw) {
        j["provenance"] = "derived";
        j["raw"] = {{"unit", unit_name(s.raw->unit())}, {"value", s.raw->value()}};
    } else {
        j["provenance"] = "analyst";
    }
    return j;
}

RawMeasurement read_raw(const Reader& r) {
    r.expect_object({"unit", "value"});
    const RawUnit unit = r.at("unit").convert([&] { return parse_unit(r.at("unit").str()); });
    const double value = r.at("value").number();
    return r.convert([&] {
        switch (unit) {
        case RawUnit::Seconds: return RawMeasurement::seconds(value);
        case RawUnit::Percent: return RawMeasurement::percent(value);
        case RawUnit::Euros: return RawMeasurement::euros(value);
        case RawUnit::Qualitative: return RawMeasurement::qualitative(static_cast<int>(value));
        }
        return RawMeasurement::seconds(value);
    });
}

VariableScore read_score(const Reader& r) {
    r.expect_object({"variable", "band", "score", "motivation", "notes", "provenance", "raw"});
    VariableScore s;
    s.variable = r.at("variable").convert([&] { return parse_variable(r.at("variable").str()); });
    s.band = static_cast<int>(r.at("band").integer());
    s.score = static_cast<int>(r.at("score").integer());
    s.motivation = r.at("motivation").str();
    s.notes = r.at("notes").str();
    const std::string provenance = r.at("provenance").str();
    if (provenance == "derived") {
        s.raw = read_raw(r.at("raw"));
    } else if (provenance == "analyst") {
        if (r.has("raw")) r.fail("/raw", "analyst-assigned score carries a measurement");
    } else {
        r.fail("/provenance", "expected 'analyst' or 'derived'");
    }
    return s;
}

ToolObservation read_tool(const Reader& r) {
    r.expect_object({"id", "name", "category", "mode", "working_principles", "known_vulnerabilities", "sources"});
    ToolObservation t;
    t.id = r.at("id").str();
    t.name = r.at("name").str();
    t.category = r.at("category").convert([&] { return parse_category(r.at("category").str()); });
    t.mode = r.at("mode").convert([&] { return parse_mode(r.at("mode").str()); });
    t.working_principles = r.at("working_principles").str();
    t.known_vulnerabilities = r.at("known_vulnerabilities").str();
    const Reader sources = r.at("sources");
    for (std::size_t i = 0, n = sources.array_size(); i < n; ++i) {
        const Reader s = sources.at(i);
        s.expect_object({"reference", "accessed"});
        t.sources.push_back({s.at("reference").str(), s.at("accessed").str()});
    }
    return t;
}

Timestamp read_time(const Reader& r) {
    return r.convert([&] { return parse_iso8601(r.str()); });
}

} // namespace

fs::path resolve_project_file(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) return path / kProjectFileName;
    return path;
}

json project_document(const Project& p) {
    json project;
    project["name"] = p.name;
    project["created"] = format_iso8601(p.created);
    project["modified"] = format_iso8601(p.modified);
    project["revision"] = p.revision;
    project["asset_context"] = {
        {"asset_to_secure", p.asset_context.asset_to_secure},
        {"threats_in_scope", p.asset_context.threats_in_scope},
        {"loss_estimate", p.asset_context.loss_estimate},
        {"prevention_budget", p.asset_context.prevention_budget},
    };
    json tools = json::array();
    for (const ToolObservation& t : p.tools) {
        json sources = json::array();
        for (const Source& s : t.sources) sources.push_back({{"reference", s.reference}, {"accessed", s.accessed}});
        tools.push_back({
            {"id", t.id},
            {"name", t.name},
            {"category", category_name(t.category)},
            {"mode", mode_name(t.mode)},
            {"working_principles", t.working_principles},
            {"known_vulnerabilities", t.known_vulnerabilities},
            {"sources", std::move(sources)},
        });
    }
    project["tools"] = std::move(tools);
    json assessments = json::object();
    for (const auto& [id, a] : p.assessments) {
        json scores = json::array();
        for (const auto& s : a.scores) {
            if (s) scores.push_back(score_json(*s));
        }
        assessments[id] = {{"scores", std::move(scores)}};
    }
    project["assessments"] = std::move(assessments);
    return {{"schema_version", kSchemaVersion}, {"project", std::move(project)}};
}

Project project_from_document(const json& doc) {
    const Reader root(doc, "");
    if (!doc.is_object()) root.fail("", "expected an object");
    const std::int64_t version = root.at("schema_version").integer();
    if (version != kSchemaVersion) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "project schema_version " + std::to_string(version) + " is not supported (this build reads v" +
                        std::to_string(kSchemaVersion) + ")",
                    "/schema_version");
    }
    root.expect_object({"schema_version", "project"});

    const Reader r = root.at("project");
    r.expect_object({"name", "created", "modified", "revision", "asset_context", "tools", "assessments"});
    Project p;
    p.name = r.at("name").str();
    p.created = read_time(r.at("created"));
    p.modified = read_time(r.at("modified"));
    p.revision = r.at("revision").unsigned_integer();

    const Reader ctx = r.at("asset_context");
    ctx.expect_object({"asset_to_secure", "threats_in_scope", "loss_estimate", "prevention_budget"});
    p.asset_context.asset_to_secure = ctx.at("asset_to_secure").str();
    p.asset_context.threats_in_scope = ctx.at("threats_in_scope").str();
    p.asset_context.loss_estimate = ctx.at("loss_estimate").str();
    p.asset_context.prevention_budget = ctx.at("prevention_budget").str();

    const Reader tools = r.at("tools");
    for (std::size_t i = 0, n = tools.array_size(); i < n; ++i) p.tools.push_back(read_tool(tools.at(i)));

    const Reader assessments = r.at("assessments");
    if (!assessments.raw().is_object()) assessments.fail("", "expected an object");
    for (const auto& [id, node] : assessments.raw().items()) {
        const Reader a(node, assessments.path() + "/" + id);
        a.expect_object({"scores"});
        ToolAssessment ta;
        ta.tool_id = id;
        const Reader scores = a.at("scores");
        for (std::size_t i = 0, n = scores.array_size(); i < n; ++i) {
            VariableScore s = read_score(scores.at(i));
            auto& slot = ta.scores[index_of(s.variable)];
            if (slot) scores.at(i).fail("/variable", "duplicate variable");
            slot = std::move(s);
        }
        p.assessments.emplace(id, std::move(ta));
    }
    check_invariants(p);
    return p;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::string tmpl = (dir / ("." + path.filename().string() + ".tmp-XXXXXX")).string();
    const int fd = ::mkstemp(tmpl.data());
    if (fd < 0) {
        throw Error(ErrorCode::IoFailure, "cannot create temporary file in " + dir.string() + ": " + errno_text());
    }
    auto fail = [&](const std::string& what) {
        const std::string msg = what + " " + tmpl + ": " + errno_text();
        ::close(fd);
        ::unlink(tmpl.c_str());
        throw Error(ErrorCode::IoFailure, msg);
    };
    std::size_t written = 0;
    while (written < content.size()) {
        const ssize_t n = ::write(fd, content.data() + written, content.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            fail("cannot write");
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fchmod(fd, 0644) != 0 || ::fsync(fd) != 0) fail("cannot sync");
    if (::close(fd) != 0) {
        ::unlink(tmpl.c_str());
        throw Error(ErrorCode::IoFailure, "cannot close " + tmpl + ": " + errno_text());
    }
    if (::rename(tmpl.c_str(), path.c_str()) != 0) {
        const std::string msg = "cannot replace " + path.string() + ": " + errno_text();
        ::unlink(tmpl.c_str());
        throw Error(ErrorCode::IoFailure, msg);
    }
}

void save_project(const Project& project, const fs::path& path) {
    std::string text;
    try {
        text = project_document(project).dump(2) + "\n";
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SerializationFailure, std::string("cannot serialize project: ") + e.what());
    }
    write_file_atomic(path, text);
}

Project load_project(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open project file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::CorruptDocument, path.string() + ": " + e.what(), "/");
    }
    return project_from_document(doc);
}

std::string matrix_csv(const Matrix& matrix) {
    auto quote = [](const std::string& field) {
        if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
        std::string out = "\"";
        for (char c : field) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    };
    std::string out(kMatrixCsvHeader);
    out += '\n';
    for (const MatrixRow& row : matrix.rows) {
        out += quote(row.tool_name);
        for (int s : row.scores) out += "," + std::to_string(s);
        out += "," + std::to_string(row.score_total) + "," + std::string(level_name(row.threat_level)) + "\n";
    }
    return out;
}

void export_matrix_csv(const Project& project, const fs::path& path) {
    write_file_atomic(path, matrix_csv(build_matrix(project)));
}

ProjectLock::ProjectLock(const fs::path& project_file) {
    const std::string lock_path = project_file.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) {
        throw Error(ErrorCode::IoFailure, "cannot open lock file " + lock_path + ": " + errno_text());
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        const bool busy = errno == EWOULDBLOCK;
        const std::string msg = errno_text();
        ::close(fd_);
        fd_ = -1;
        if (busy) {
            throw Error(ErrorCode::LockHeld, "project " + project_file.string() + " is locked by another writer");
        }
        throw Error(ErrorCode::IoFailure, "cannot lock " + lock_path + ": " + msg);
    }
}

ProjectLock::~ProjectLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

ProjectLock::ProjectLock(ProjectLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

ProjectLock& ProjectLock::operator=(ProjectLock&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

} // namespace riddle
