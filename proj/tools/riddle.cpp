// riddle: command-line front end for R.I.D.D.L.E. + (C) offensive-tool assessments.
//
// Exit codes: 0 success, 1 runtime failure, 2 validation or usage error.

#include "riddle/assessment.hpp"
#include "riddle/error.hpp"
#include "riddle/reports.hpp"
#include "riddle/rubric.hpp"
#include "riddle/service.hpp"
#include "riddle/store.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string project;

    // init
    std::string init_dir;
    std::string init_name;
    std::optional<std::string> asset, threats, losses, budget;
    bool force = false;
    bool non_interactive = false;

    // tool add
    std::string tool_name;
    std::string tool_category;
    std::string principles;
    std::string vulns;
    std::vector<std::string> sources;

    // score
    std::string score_tool;
    std::string variable;
    std::optional<int> band;
    std::optional<std::string> raw;
    std::optional<int> score;
    std::string motivation;
    std::string notes;

    // output
    std::string format;
    std::string output;

    // serve
    std::string addr = "127.0.0.1";
    int port = 8080;
    std::string root = ".";
    std::string ui_dir;
};

fs::path project_file(const Options& opt) {
    std::string path = opt.project;
    if (path.empty()) {
        const char* env = std::getenv("RIDDLE_PROJECT");
        path = env && *env ? env : ".";
    }
    return riddle::resolve_project_file(path);
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    riddle::write_file_atomic(output, text);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string prompt(std::string_view question) {
    std::cerr << question << ' ' << std::flush;
    std::string line;
    std::getline(std::cin, line);
    return line;
}

riddle::Source parse_source(const std::string& text) {
    const auto at = text.rfind('@');
    if (at != std::string::npos && riddle::is_valid_date(std::string_view(text).substr(at + 1))) {
        return {text.substr(0, at), text.substr(at + 1)};
    }
    return {text, riddle::format_date(riddle::now_utc())};
}

int cmd_init(const Options& opt) {
    const fs::path dir = opt.init_dir;
    const fs::path file = dir / riddle::kProjectFileName;
    if (fs::exists(file) && !opt.force) {
        throw riddle::Error(riddle::ErrorCode::InvalidArgument,
                            file.string() + " already exists; pass --force to overwrite");
    }

    const bool interactive = !opt.non_interactive && ::isatty(STDIN_FILENO);
    const auto& questions = riddle::asset_questions();
    const std::array<const std::optional<std::string>*, 4> given = {&opt.asset, &opt.threats, &opt.losses, &opt.budget};
    std::array<std::string, 4> answers;
    for (std::size_t i = 0; i < answers.size(); ++i) {
        if (*given[i]) {
            answers[i] = **given[i];
        } else if (interactive) {
            answers[i] = prompt(questions[i].question);
        }
    }
    riddle::AssetContext ctx{answers[0], answers[1], answers[2], answers[3]};

    std::string name = opt.init_name;
    if (name.empty()) name = fs::absolute(dir).lexically_normal().filename().string();
    if (name.empty()) name = "riddle-project";
    riddle::Project project = riddle::create_project(name);
    riddle::set_asset_context(project, ctx, project.created);

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw riddle::Error(riddle::ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
    riddle::ProjectLock lock(file);
    riddle::save_project(project, file);
    print_json({{"project", file.string()}, {"name", project.name}, {"revision", project.revision}});
    return kExitOk;
}

template <typename F>
int mutate_project(const Options& opt, F&& f) {
    const fs::path file = project_file(opt);
    riddle::ProjectLock lock(file);
    riddle::Project project = riddle::load_project(file);
    const auto before = project.revision;
    json out = f(project);
    if (project.revision != before) riddle::save_project(project, file);
    print_json(out);
    return kExitOk;
}

int cmd_tool_add(const Options& opt) {
    riddle::ToolObservation obs;
    obs.name = opt.tool_name;
    obs.category = riddle::parse_category(opt.tool_category);
    obs.working_principles = opt.principles;
    obs.known_vulnerabilities = opt.vulns;
    for (const auto& s : opt.sources) obs.sources.push_back(parse_source(s));
    return mutate_project(opt, [&](riddle::Project& p) { return riddle::tool_json(riddle::add_tool(p, obs)); });
}

int cmd_tool_list(const Options& opt) {
    const riddle::Project p = riddle::load_project(project_file(opt));
    json arr = json::array();
    for (const auto& t : p.tools) arr.push_back(riddle::tool_json(t));
    print_json(arr);
    return kExitOk;
}

int cmd_score(const Options& opt) {
    if (opt.band.has_value() == opt.raw.has_value()) {
        throw riddle::Error(riddle::ErrorCode::InvalidArgument, "pass exactly one of --band or --raw");
    }
    riddle::ScoreRequest req;
    req.variable = riddle::parse_variable(opt.variable);
    if (opt.band) {
        req.input = riddle::BandChoice{*opt.band};
    } else {
        req.input = riddle::parse_raw_measurement(*opt.raw, req.variable);
    }
    req.score = opt.score;
    req.motivation = opt.motivation;
    req.notes = opt.notes;
    return mutate_project(opt, [&](riddle::Project& p) {
        const std::string tool_id = riddle::find_tool(p, opt.score_tool).id;
        const riddle::ToolAssessment& a = riddle::record_score(p, tool_id, req);
        json out = riddle::score_view_json(*a.find(req.variable));
        out["tool_id"] = tool_id;
        out["scored"] = a.scored_count();
        out["complete"] = a.complete();
        if (a.complete()) {
            const int total = riddle::total_score(a);
            out["score_total"] = total;
            out["threat_level"] = riddle::level_name(riddle::classify_total(total));
        }
        return out;
    });
}

void report_excluded(const riddle::Matrix& m) {
    for (const auto& ex : m.excluded) {
        std::cerr << "excluded (incomplete): " << ex.tool_name << '\n';
    }
}

int cmd_matrix(const Options& opt) {
    const riddle::Project p = riddle::load_project(project_file(opt));
    const riddle::Matrix m = riddle::build_matrix(p);
    const std::string format = opt.format.empty() ? "table" : opt.format;
    if (format == "csv") {
        report_excluded(m);
        emit(riddle::matrix_csv(m), opt.output);
    } else if (format == "json") {
        emit(riddle::matrix_json(m).dump(2) + "\n", opt.output);
    } else {
        report_excluded(m);
        emit(riddle::matrix_table(m), opt.output);
    }
    return kExitOk;
}

int cmd_report(const Options& opt) {
    const riddle::Project p = riddle::load_project(project_file(opt));
    emit(riddle::markdown_report(p), opt.output);
    return kExitOk;
}

int cmd_validate(const Options& opt) {
    const riddle::Project p = riddle::load_project(project_file(opt));
    const auto findings = riddle::validate_project(p);
    print_json(riddle::findings_json(findings));
    const bool has_error = std::any_of(findings.begin(), findings.end(),
                                       [](const riddle::Finding& f) { return f.severity == riddle::Severity::Error; });
    return has_error ? kExitUsage : kExitOk;
}

int cmd_sensitivity(const Options& opt) {
    const riddle::Project p = riddle::load_project(project_file(opt));
    print_json(riddle::project_sensitivity_json(riddle::sensitivity_for_project(p)));
    return kExitOk;
}

int cmd_rubrics(const Options& opt) {
    emit(riddle::rubrics_document().dump(2) + "\n", opt.output);
    return kExitOk;
}

riddle::service::HttpServer* g_server = nullptr;

void handle_signal(int) {
    if (g_server) g_server->stop();
}

int cmd_serve(const Options& opt) {
    riddle::service::ProjectRepository repo(opt.root);
    riddle::service::Api api(repo);
    riddle::service::ServerOptions so;
    so.address = opt.addr;
    so.port = opt.port;
    if (!opt.ui_dir.empty()) so.ui_dir = opt.ui_dir;
    riddle::service::HttpServer server(api, so);
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "WARNING: the riddle service has NO AUTHENTICATION. Anyone who can reach " << opt.addr << ':'
              << opt.port << " can read and modify every project under " << opt.root << ".\n"
              << "serving " << fs::absolute(opt.root).string() << " on http://" << opt.addr << ':' << opt.port
              << "/\n";
    server.run();
    g_server = nullptr;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"R.I.D.D.L.E. + (C) offensive tool assessment workbench", "riddle"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--project,-p", opt.project,
                   "Project directory or file (default: $RIDDLE_PROJECT, then the current directory)");

    auto* init = app.add_subcommand("init", "Create a project and answer the asset questions");
    init->add_option("dir", opt.init_dir, "Project directory")->required();
    init->add_option("--name", opt.init_name, "Project name (default: directory name)");
    init->add_option("--asset", opt.asset, "Which asset do you want to secure?");
    init->add_option("--threats", opt.threats, "From which threats you want to secure them?");
    init->add_option("--losses", opt.losses, "How many losses you will face if you don't succeed?");
    init->add_option("--budget", opt.budget, "How many resources are you ready to invest for prevention?");
    init->add_flag("--force", opt.force, "Overwrite an existing project");
    init->add_flag("--non-interactive", opt.non_interactive, "Never prompt for missing answers");

    auto* tool = app.add_subcommand("tool", "Manage offensive tool observations");
    tool->require_subcommand(1);
    auto* tool_add = tool->add_subcommand("add", "Add a tool observation");
    tool_add->add_option("--name", opt.tool_name, "Tool name")->required();
    tool_add->add_option("--category", opt.tool_category, "One of: " + riddle::category_list())->required();
    tool_add->add_option("--principles", opt.principles, "Working principles");
    tool_add->add_option("--vulns", opt.vulns, "Known vulnerabilities");
    tool_add->add_option("--source", opt.sources, "OSINT source, REF or REF@YYYY-MM-DD (repeatable)");
    auto* tool_list = tool->add_subcommand("list", "List tool observations");

    auto* score = app.add_subcommand("score", "Score one variable of a tool");
    score->add_option("tool", opt.score_tool, "Tool id or name")->required();
    score->add_option("--variable,-v", opt.variable, "R, I, Dmg, Dis, L, E or C")->required();
    auto* band_opt = score->add_option("--band", opt.band, "Band index 1..5 (1 = most severe)");
    auto* raw_opt = score->add_option("--raw", opt.raw, "Raw measurement: 30s, 6h, 2w, 95%, 500");
    band_opt->excludes(raw_opt);
    score->add_option("--score", opt.score, "Override: the band's low or high score");
    score->add_option("--motivation,-m", opt.motivation, "Reason for the score (required for R and L)");
    score->add_option("--notes", opt.notes, "Free-form notes");

    auto* matrix = app.add_subcommand("matrix", "Print the tool comparison matrix");
    matrix->add_option("--format", opt.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    matrix->add_option("--output,-o", opt.output, "Write to a file instead of stdout");

    auto* report = app.add_subcommand("report", "Render a Markdown report");
    report->add_option("--format", opt.format, "md")->check(CLI::IsMember({"md"}));
    report->add_option("--output,-o", opt.output, "Write to a file instead of stdout");

    auto* validate = app.add_subcommand("validate", "Check the project for missing answers, sources and scores");
    auto* sensitivity = app.add_subcommand("sensitivity", "Within-band total ranges per complete tool");

    auto* rubrics = app.add_subcommand("rubrics", "Export the rubric tables as JSON");
    rubrics->add_option("--output,-o", opt.output, "Write to a file instead of stdout");

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API and workbench (no authentication)");
    serve->add_option("--addr", opt.addr, "Bind address");
    serve->add_option("--port", opt.port, "Port")->check(CLI::Range(0, 65535));
    serve->add_option("--root", opt.root, "Directory holding project directories");
    serve->add_option("--ui-dir", opt.ui_dir, "Built workbench assets served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*init) return cmd_init(opt);
        if (*tool_add) return cmd_tool_add(opt);
        if (*tool_list) return cmd_tool_list(opt);
        if (*score) return cmd_score(opt);
        if (*matrix) return cmd_matrix(opt);
        if (*report) return cmd_report(opt);
        if (*validate) return cmd_validate(opt);
        if (*sensitivity) return cmd_sensitivity(opt);
        if (*rubrics) return cmd_rubrics(opt);
        if (*serve) return cmd_serve(opt);
    } catch (const riddle::Error& e) {
        std::cerr << "error: " << e.code_name() << ": " << e.what() << '\n';
        return riddle::exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
