#include "riddle/assessment.hpp"

#include "riddle/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <set>

namespace riddle {

namespace {

constexpr std::array<AssetQuestion, 4> kQuestions = {{
    {"asset_to_secure", "Which asset do you want to secure?"},
    {"threats_in_scope", "From which threats you want to secure them?"},
    {"loss_estimate", "How many losses you will face if you don't succeed?"},
    {"prevention_budget", "How many resources are you ready to invest for prevention?"},
}};

constexpr std::array<std::string_view, 12> kCategoryNames = {
    "virus",           "worm",      "trojan horse",    "remote access tool",
    "malicious code",  "explosive attack", "vandalism", "chemical attack",
    "perimeter breach", "diversion", "sabotage of supply structure", "armed assault",
};

std::string variable_list(const std::vector<Variable>& vars) {
    std::string out;
    for (Variable v : vars) {
        if (!out.empty()) out += ", ";
        out += display_name(v);
    }
    return out;
}

ToolObservation* find_tool_mut(Project& project, std::string_view id) {
    auto it = std::find_if(project.tools.begin(), project.tools.end(),
                           [&](const ToolObservation& t) { return t.id == id; });
    return it == project.tools.end() ? nullptr : &*it;
}

void touch(Project& project, Timestamp now) {
    project.modified = now;
    ++project.revision;
}

void check_sources(const std::vector<Source>& sources) {
    for (const Source& s : sources) {
        if (detail::is_blank(s.reference)) {
            throw Error(ErrorCode::InvalidArgument, "source reference must not be empty");
        }
        if (!is_valid_date(s.accessed)) {
            throw Error(ErrorCode::InvalidArgument,
                        "source access date must be YYYY-MM-DD, got '" + s.accessed + "'");
        }
    }
}

[[noreturn]] void corrupt(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::CorruptDocument, what + " at " + path, path);
}

} // namespace

std::vector<std::string_view> AssetContext::missing() const {
    std::vector<std::string_view> out;
    const std::array<const std::string*, 4> answers = {&asset_to_secure, &threats_in_scope, &loss_estimate,
                                                       &prevention_budget};
    for (std::size_t i = 0; i < answers.size(); ++i) {
        if (detail::is_blank(*answers[i])) out.push_back(kQuestions[i].field);
    }
    return out;
}

const std::array<AssetQuestion, 4>& asset_questions() { return kQuestions; }

std::string_view category_name(ToolCategory c) { return kCategoryNames.at(static_cast<std::size_t>(c)); }

ToolCategory parse_category(std::string_view text) {
    std::string wanted = detail::to_lower(detail::trim(text));
    std::replace(wanted.begin(), wanted.end(), '-', ' ');
    std::replace(wanted.begin(), wanted.end(), '_', ' ');
    for (ToolCategory c : kToolCategories) {
        if (wanted == category_name(c)) return c;
    }
    throw Error(ErrorCode::UnknownCategory,
                "unknown category '" + std::string(text) + "'; valid categories: " + category_list());
}

DisruptionMode mode_for(ToolCategory c) {
    return static_cast<int>(c) <= static_cast<int>(ToolCategory::MaliciousCode) ? DisruptionMode::Cyber
                                                                                 : DisruptionMode::Kinetic;
}

std::string category_list() {
    std::string out;
    for (ToolCategory c : kToolCategories) {
        if (!out.empty()) out += ", ";
        out += category_name(c);
    }
    return out;
}

std::vector<Variable> ToolAssessment::missing() const {
    std::vector<Variable> out;
    for (Variable v : kVariables) {
        if (!scores[index_of(v)]) out.push_back(v);
    }
    return out;
}

int ToolAssessment::scored_count() const {
    return static_cast<int>(std::count_if(scores.begin(), scores.end(), [](const auto& s) { return s.has_value(); }));
}

const VariableScore* ToolAssessment::find(Variable v) const {
    const auto& slot = scores[index_of(v)];
    return slot ? &*slot : nullptr;
}

std::string slugify(std::string_view text) {
    std::string out;
    bool pending_dash = false;
    for (unsigned char c : text) {
        if (std::isalnum(c) && c < 0x80) {
            if (pending_dash && !out.empty()) out.push_back('-');
            pending_dash = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_dash = true;
        }
    }
    return out;
}

Project create_project(std::string name, Timestamp now) {
    if (detail::is_blank(name)) {
        throw Error(ErrorCode::InvalidArgument, "project name must not be empty");
    }
    Project p;
    p.name = std::string(detail::trim(name));
    p.created = now;
    p.modified = now;
    return p;
}

void set_asset_context(Project& project, AssetContext answers, Timestamp now) {
    if (auto missing = answers.missing(); !missing.empty()) {
        throw Error(ErrorCode::EmptyAnswer, "missing answer: " + std::string(missing.front()),
                    std::string(missing.front()));
    }
    project.asset_context = std::move(answers);
    touch(project, now);
}

const ToolObservation& add_tool(Project& project, ToolObservation observation, Timestamp now) {
    observation.name = std::string(detail::trim(observation.name));
    if (observation.name.empty()) {
        throw Error(ErrorCode::InvalidArgument, "tool name must not be empty", "name");
    }
    observation.id = slugify(observation.name);
    if (observation.id.empty()) {
        throw Error(ErrorCode::InvalidArgument, "tool name must contain at least one letter or digit", "name");
    }
    const std::string lowered = detail::to_lower(observation.name);
    for (const ToolObservation& t : project.tools) {
        if (t.id == observation.id || detail::to_lower(t.name) == lowered) {
            throw Error(ErrorCode::DuplicateTool, "tool '" + observation.name + "' already exists as '" + t.id + "'",
                        "name");
        }
    }
    check_sources(observation.sources);
    observation.mode = mode_for(observation.category);
    project.tools.push_back(std::move(observation));
    touch(project, now);
    return project.tools.back();
}

const ToolObservation& update_tool_details(Project& project, std::string_view tool_id,
                                           std::string working_principles, std::string known_vulnerabilities,
                                           std::vector<Source> sources, Timestamp now) {
    ToolObservation* tool = find_tool_mut(project, tool_id);
    if (!tool) {
        throw Error(ErrorCode::UnknownTool, "unknown tool '" + std::string(tool_id) + "'");
    }
    check_sources(sources);
    tool->working_principles = std::move(working_principles);
    tool->known_vulnerabilities = std::move(known_vulnerabilities);
    tool->sources = std::move(sources);
    touch(project, now);
    return *tool;
}

void remove_tool(Project& project, std::string_view tool_id, Timestamp now) {
    auto it = std::find_if(project.tools.begin(), project.tools.end(),
                           [&](const ToolObservation& t) { return t.id == tool_id; });
    if (it == project.tools.end()) {
        throw Error(ErrorCode::UnknownTool, "unknown tool '" + std::string(tool_id) + "'");
    }
    project.assessments.erase(it->id);
    project.tools.erase(it);
    touch(project, now);
}

const ToolObservation& find_tool(const Project& project, std::string_view id_or_name) {
    for (const ToolObservation& t : project.tools) {
        if (t.id == id_or_name) return t;
    }
    for (const ToolObservation& t : project.tools) {
        if (t.name == id_or_name) return t;
    }
    throw Error(ErrorCode::UnknownTool, "unknown tool '" + std::string(id_or_name) + "'");
}

const ToolAssessment& record_score(Project& project, std::string_view tool_id, const ScoreRequest& request,
                                   Timestamp now) {
    const ToolObservation& tool = find_tool(project, tool_id);
    if (auto missing = project.asset_context.missing(); !missing.empty()) {
        throw Error(ErrorCode::EmptyAnswer,
                    "answer the asset questions before scoring; missing: " + std::string(missing.front()),
                    std::string(missing.front()));
    }

    const Variable v = request.variable;
    const Rubric& rubric = rubric_for(v, tool.mode);

    VariableScore entry;
    entry.variable = v;
    entry.motivation = request.motivation;
    entry.notes = request.notes;

    int default_score = 0;
    if (const auto* raw = std::get_if<RawMeasurement>(&request.input)) {
        if (!rubric.quantitative) {
            if (raw->unit() != RawUnit::Qualitative) {
                throw Error(ErrorCode::QualitativeVariable,
                            std::string(display_name(v)) + " is qualitative; select a band directly", "band");
            }
            entry.band = static_cast<int>(raw->value());
            default_score = band_low_score(entry.band);
        } else {
            const ScoreBand band = derive_band(v, *raw, tool.mode);
            entry.band = band.index;
            entry.raw = *raw;
            default_score = refine_score(band, *raw, rubric);
        }
    } else {
        const int index = std::get<BandChoice>(request.input).index;
        if (index < 1 || index > kBandCount) {
            throw Error(ErrorCode::InvalidArgument, "band must be 1..5 (1 = most severe)", "band");
        }
        entry.band = index;
        default_score = band_low_score(index);
    }

    if (!rubric.quantitative && detail::is_blank(entry.motivation)) {
        throw Error(ErrorCode::QualitativeNeedsMotivation,
                    std::string(display_name(v)) + " is qualitative and needs a motivation", "motivation");
    }

    const ScoreBand& band = rubric.band(entry.band);
    entry.score = request.score.value_or(default_score);
    if (!band.contains_score(entry.score)) {
        throw Error(ErrorCode::ScoreOutsideBand,
                    "score " + std::to_string(entry.score) + " is not in band " + std::to_string(band.low_score) +
                        "-" + std::to_string(band.high_score),
                    "score");
    }

    ToolAssessment& assessment = project.assessments[tool.id];
    assessment.tool_id = tool.id;
    auto& slot = assessment.scores[index_of(v)];
    if (slot != entry) {
        slot = std::move(entry);
        touch(project, now);
    }
    return assessment;
}

void clear_score(Project& project, std::string_view tool_id, Variable variable, Timestamp now) {
    const ToolObservation& tool = find_tool(project, tool_id);
    auto it = project.assessments.find(tool.id);
    if (it == project.assessments.end() || !it->second.scores[index_of(variable)]) {
        return;
    }
    it->second.scores[index_of(variable)].reset();
    if (it->second.scored_count() == 0) {
        project.assessments.erase(it);
    }
    touch(project, now);
}

int total_score(const ToolAssessment& assessment) {
    if (auto missing = assessment.missing(); !missing.empty()) {
        throw Error(ErrorCode::IncompleteAssessment,
                    "incomplete assessment for '" + assessment.tool_id + "'; missing: " + variable_list(missing));
    }
    int total = 0;
    for (const auto& s : assessment.scores) total += s->score;
    return total;
}

Matrix build_matrix(const Project& project) {
    Matrix m;
    for (const ToolObservation& tool : project.tools) {
        auto it = project.assessments.find(tool.id);
        if (it == project.assessments.end() || !it->second.complete()) {
            ExcludedTool ex{tool.id, tool.name, {}};
            ex.missing = it == project.assessments.end()
                             ? std::vector<Variable>(kVariables.begin(), kVariables.end())
                             : it->second.missing();
            m.excluded.push_back(std::move(ex));
            continue;
        }
        MatrixRow row;
        row.tool_id = tool.id;
        row.tool_name = tool.name;
        for (Variable v : kVariables) row.scores[index_of(v)] = it->second.find(v)->score;
        row.score_total = total_score(it->second);
        row.threat_level = classify_total(row.score_total);
        m.rows.push_back(std::move(row));
    }
    if (m.rows.empty()) {
        throw Error(ErrorCode::NoCompleteAssessments, "no tool has all seven variables scored");
    }
    std::sort(m.rows.begin(), m.rows.end(), [](const MatrixRow& a, const MatrixRow& b) {
        if (a.score_total != b.score_total) return a.score_total > b.score_total;
        if (a.tool_name != b.tool_name) return a.tool_name < b.tool_name;
        return a.tool_id < b.tool_id;
    });
    return m;
}

SensitivityReport sensitivity_for_bands(const std::array<int, kVariableCount>& band_indices) {
    for (int b : band_indices) {
        if (b < 1 || b > kBandCount) {
            throw Error(ErrorCode::InvalidArgument, "band index must be 1..5");
        }
    }
    SensitivityReport r;
    r.min_total = kMaxTotal + 1;
    r.max_total = -1;
    std::set<ThreatLevel> levels;
    constexpr unsigned kCombos = 1u << kVariableCount;
    for (unsigned mask = 0; mask < kCombos; ++mask) {
        int total = 0;
        for (std::size_t i = 0; i < kVariableCount; ++i) {
            total += (mask >> i) & 1u ? band_high_score(band_indices[i]) : band_low_score(band_indices[i]);
        }
        r.min_total = std::min(r.min_total, total);
        r.max_total = std::max(r.max_total, total);
        levels.insert(classify_total(total));
    }
    r.levels_reachable.assign(levels.begin(), levels.end());
    r.boundary_crossed = r.levels_reachable.size() > 1;
    return r;
}

SensitivityReport sensitivity_within_band(const ToolAssessment& assessment) {
    if (auto missing = assessment.missing(); !missing.empty()) {
        throw Error(ErrorCode::IncompleteAssessment,
                    "incomplete assessment for '" + assessment.tool_id + "'; missing: " + variable_list(missing));
    }
    std::array<int, kVariableCount> bands{};
    for (Variable v : kVariables) bands[index_of(v)] = assessment.find(v)->band;
    SensitivityReport r = sensitivity_for_bands(bands);
    r.tool_id = assessment.tool_id;
    return r;
}

ProjectSensitivity sensitivity_for_project(const Project& project) {
    ProjectSensitivity out;
    for (const ToolObservation& tool : project.tools) {
        auto it = project.assessments.find(tool.id);
        if (it == project.assessments.end() || !it->second.complete()) {
            ExcludedTool ex{tool.id, tool.name, {}};
            ex.missing = it == project.assessments.end()
                             ? std::vector<Variable>(kVariables.begin(), kVariables.end())
                             : it->second.missing();
            out.excluded.push_back(std::move(ex));
            continue;
        }
        out.reports.push_back(sensitivity_within_band(it->second));
    }
    return out;
}

std::string_view severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::vector<Finding> validate_project(const Project& project) {
    std::vector<Finding> findings;
    for (std::string_view field : project.asset_context.missing()) {
        auto q = std::find_if(kQuestions.begin(), kQuestions.end(),
                              [&](const AssetQuestion& aq) { return aq.field == field; });
        findings.push_back({Severity::Error, "unanswered_question", std::string(field),
                            "unanswered: " + std::string(q->question)});
    }
    for (const ToolObservation& tool : project.tools) {
        if (tool.sources.empty()) {
            findings.push_back({Severity::Warning, "missing_sources", tool.id,
                                "tool '" + tool.name + "' has no OSINT sources"});
        }
        auto it = project.assessments.find(tool.id);
        if (it == project.assessments.end()) {
            findings.push_back({Severity::Warning, "incomplete_assessment", tool.id,
                                "tool '" + tool.name + "' has not been scored"});
            continue;
        }
        if (auto missing = it->second.missing(); !missing.empty()) {
            findings.push_back({Severity::Warning, "incomplete_assessment", tool.id,
                                "tool '" + tool.name + "' is missing: " + variable_list(missing)});
        }
        for (Variable v : {Variable::Resistance, Variable::Latency}) {
            const VariableScore* s = it->second.find(v);
            if (s && detail::is_blank(s->motivation)) {
                findings.push_back({Severity::Error, "missing_motivation", tool.id + "/" + std::string(short_name(v)),
                                    std::string(display_name(v)) + " score for '" + tool.name +
                                        "' has no motivation"});
            }
        }
    }
    for (const auto& [id, assessment] : project.assessments) {
        if (std::none_of(project.tools.begin(), project.tools.end(),
                         [&](const ToolObservation& t) { return t.id == id; })) {
            findings.push_back({Severity::Error, "orphan_assessment", id, "assessment for unknown tool '" + id + "'"});
        }
    }
    return findings;
}

void check_invariants(const Project& project) {
    if (detail::is_blank(project.name)) corrupt("/project/name", "empty project name");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < project.tools.size(); ++i) {
        const ToolObservation& t = project.tools[i];
        const std::string path = "/project/tools/" + std::to_string(i);
        if (t.id.empty() || t.id != slugify(t.name)) corrupt(path + "/id", "tool id does not match its name");
        if (!ids.insert(t.id).second) corrupt(path + "/id", "duplicate tool id '" + t.id + "'");
        if (t.mode != mode_for(t.category)) corrupt(path + "/mode", "mode disagrees with category");
        for (std::size_t s = 0; s < t.sources.size(); ++s) {
            if (!is_valid_date(t.sources[s].accessed)) {
                corrupt(path + "/sources/" + std::to_string(s) + "/accessed", "invalid access date");
            }
        }
    }
    for (const auto& [key, a] : project.assessments) {
        const std::string path = "/project/assessments/" + key;
        if (a.tool_id != key) corrupt(path + "/tool_id", "assessment key disagrees with tool id");
        auto tool = std::find_if(project.tools.begin(), project.tools.end(),
                                 [&](const ToolObservation& t) { return t.id == key; });
        if (tool == project.tools.end()) corrupt(path, "assessment references unknown tool");
        for (Variable v : kVariables) {
            const VariableScore* s = a.find(v);
            if (!s) continue;
            const std::string spath = path + "/scores/" + std::string(short_name(v));
            if (s->variable != v) corrupt(spath + "/variable", "score stored under the wrong variable");
            if (s->band < 1 || s->band > kBandCount) corrupt(spath + "/band", "band out of range");
            if (s->score != band_low_score(s->band) && s->score != band_high_score(s->band)) {
                corrupt(spath + "/score", "score outside its band");
            }
            if (!is_quantitative(v)) {
                if (s->raw) corrupt(spath + "/raw", "qualitative score cannot be derived from a measurement");
                if (detail::is_blank(s->motivation)) corrupt(spath + "/motivation", "qualitative score lacks motivation");
            } else if (s->raw) {
                if (s->raw->unit() != unit_of(v)) corrupt(spath + "/raw", "measurement unit mismatch");
                if (derive_band(v, *s->raw, tool->mode).index != s->band) {
                    corrupt(spath + "/band", "band disagrees with the recorded measurement");
                }
            }
        }
    }
}

} // namespace riddle
