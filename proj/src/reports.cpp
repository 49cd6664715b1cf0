#include "riddle/reports.hpp"

#include "riddle/error.hpp"

#include <algorithm>

namespace riddle {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kVariableCount> kMatrixKeys = {"r", "i", "dmg", "dis", "l", "e", "c"};

// Human-readable header as printed in the comparison table: both D columns stay "D".
constexpr std::array<std::string_view, 10> kTableHeader = {"Tool name", "R", "I", "D", "D", "L",
                                                           "E",         "C", "Score", "Total"};

json variables_json(const std::vector<Variable>& vars) {
    json arr = json::array();
    for (Variable v : vars) arr.push_back(short_name(v));
    return arr;
}

std::string md_cell(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += "<br>";
        } else if (c != '\r') {
            out += c;
        }
    }
    return out;
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

} // namespace

json matrix_json(const Matrix& matrix) {
    json rows = json::array();
    for (const MatrixRow& row : matrix.rows) {
        json j;
        j["tool_id"] = row.tool_id;
        j["tool_name"] = row.tool_name;
        for (std::size_t i = 0; i < kVariableCount; ++i) j[std::string(kMatrixKeys[i])] = row.scores[i];
        j["score_total"] = row.score_total;
        j["threat_level"] = level_name(row.threat_level);
        rows.push_back(std::move(j));
    }
    return {{"rows", std::move(rows)}, {"excluded", excluded_json(matrix.excluded)}};
}

json excluded_json(const std::vector<ExcludedTool>& excluded) {
    json arr = json::array();
    for (const ExcludedTool& ex : excluded) {
        arr.push_back({{"tool_id", ex.tool_id}, {"tool_name", ex.tool_name}, {"missing", variables_json(ex.missing)}});
    }
    return arr;
}

json sensitivity_json(const SensitivityReport& r) {
    json levels = json::array();
    for (ThreatLevel l : r.levels_reachable) levels.push_back(level_name(l));
    return {{"tool_id", r.tool_id},
            {"min_total", r.min_total},
            {"max_total", r.max_total},
            {"levels_reachable", std::move(levels)},
            {"boundary_crossed", r.boundary_crossed}};
}

json project_sensitivity_json(const ProjectSensitivity& s) {
    json reports = json::array();
    for (const auto& r : s.reports) reports.push_back(sensitivity_json(r));
    return {{"reports", std::move(reports)}, {"excluded", excluded_json(s.excluded)}};
}

json findings_json(const std::vector<Finding>& findings) {
    json arr = json::array();
    for (const Finding& f : findings) {
        arr.push_back({{"severity", severity_name(f.severity)},
                       {"code", f.code},
                       {"subject", f.subject},
                       {"message", f.message}});
    }
    return arr;
}

json tool_json(const ToolObservation& t) {
    json sources = json::array();
    for (const Source& s : t.sources) sources.push_back({{"reference", s.reference}, {"accessed", s.accessed}});
    return {{"id", t.id},
            {"name", t.name},
            {"category", category_name(t.category)},
            {"mode", mode_name(t.mode)},
            {"working_principles", t.working_principles},
            {"known_vulnerabilities", t.known_vulnerabilities},
            {"sources", std::move(sources)}};
}

json score_view_json(const VariableScore& s) {
    json j;
    j["variable"] = short_name(s.variable);
    j["band"] = {{"index", s.band}, {"low_score", band_low_score(s.band)}, {"high_score", band_high_score(s.band)}};
    j["score"] = s.score;
    j["motivation"] = s.motivation;
    j["notes"] = s.notes;
    if (s.raw) {
        j["provenance"] = "derived";
        j["raw"] = {{"unit", unit_name(s.raw->unit())}, {"value", s.raw->value()}, {"text", format_raw(*s.raw)}};
    } else {
        j["provenance"] = "analyst";
    }
    return j;
}

json assessment_json(const ToolAssessment& a) {
    json scores = json::array();
    for (const auto& s : a.scores) {
        if (s) scores.push_back(score_view_json(*s));
    }
    json j;
    j["tool_id"] = a.tool_id;
    j["scores"] = std::move(scores);
    j["scored"] = a.scored_count();
    j["complete"] = a.complete();
    j["missing"] = variables_json(a.missing());
    if (a.complete()) {
        const int total = total_score(a);
        j["score_total"] = total;
        j["threat_level"] = level_name(classify_total(total));
    }
    return j;
}

std::string matrix_table(const Matrix& matrix) {
    std::size_t name_width = kTableHeader[0].size();
    for (const MatrixRow& row : matrix.rows) name_width = std::max(name_width, row.tool_name.size());

    std::string out = pad(kTableHeader[0], name_width);
    for (std::size_t i = 1; i < kTableHeader.size(); ++i) {
        out += "  " + pad(kTableHeader[i], i < 8 ? 2 : 6);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    for (const MatrixRow& row : matrix.rows) {
        std::string line = pad(row.tool_name, name_width);
        for (int s : row.scores) line += "  " + pad(std::to_string(s), 2);
        line += "  " + pad(std::to_string(row.score_total), 6);
        line += "  " + std::string(level_name(row.threat_level));
        out += line + '\n';
    }
    return out;
}

std::string markdown_report(const Project& project) {
    std::string out = "# R.I.D.D.L.E. + (C) assessment: " + md_cell(project.name) + "\n\n";
    out += "Generated from revision " + std::to_string(project.revision) + ", last modified " +
           format_iso8601(project.modified) + ".\n\n";

    out += "## Asset context\n\n| Question | Answer |\n|---|---|\n";
    const std::array<const std::string*, 4> answers = {
        &project.asset_context.asset_to_secure, &project.asset_context.threats_in_scope,
        &project.asset_context.loss_estimate, &project.asset_context.prevention_budget};
    for (std::size_t i = 0; i < answers.size(); ++i) {
        const std::string& a = *answers[i];
        out += "| " + std::string(asset_questions()[i].question) + " | " + (a.empty() ? "_unanswered_" : md_cell(a)) +
               " |\n";
    }

    out += "\n## Tool comparison table\n\n";
    std::optional<Matrix> matrix;
    try {
        matrix = build_matrix(project);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCompleteAssessments) throw;
    }
    if (matrix) {
        out += "|";
        for (std::string_view h : kTableHeader) out += " " + std::string(h) + " |";
        out += "\n|";
        for (std::size_t i = 0; i < kTableHeader.size(); ++i) out += i == 0 ? "---|" : "---:|";
        out += "\n";
        for (const MatrixRow& row : matrix->rows) {
            out += "| " + md_cell(row.tool_name) + " |";
            for (int s : row.scores) out += " " + std::to_string(s) + " |";
            out += " " + std::to_string(row.score_total) + " | " + std::string(level_name(row.threat_level)) + " |\n";
        }
        for (const ExcludedTool& ex : matrix->excluded) {
            out += "\nExcluded (incomplete): " + md_cell(ex.tool_name) + ".";
        }
        if (!matrix->excluded.empty()) out += "\n";
    } else {
        out += "No tool has all seven variables scored yet.\n";
    }

    for (const ToolObservation& tool : project.tools) {
        out += "\n## " + md_cell(tool.name) + "\n\n";
        out += "- Category: " + std::string(category_name(tool.category)) + " (" + std::string(mode_name(tool.mode)) +
               ")\n";
        if (!tool.working_principles.empty()) out += "- Working principles: " + md_cell(tool.working_principles) + "\n";
        if (!tool.known_vulnerabilities.empty()) {
            out += "- Known vulnerabilities: " + md_cell(tool.known_vulnerabilities) + "\n";
        }
        for (const Source& s : tool.sources) {
            out += "- Source: " + md_cell(s.reference) + " (accessed " + s.accessed + ")\n";
        }

        out += "\n| Variable | Score | Motivation | Notes |\n|---|---:|---|---|\n";
        auto it = project.assessments.find(tool.id);
        for (Variable v : kVariables) {
            const VariableScore* s = it == project.assessments.end() ? nullptr : it->second.find(v);
            out += "| " + std::string(display_name(v)) + " | ";
            if (s) {
                std::string notes = s->notes;
                if (s->raw) notes = "measured " + format_raw(*s->raw) + (notes.empty() ? "" : "; " + notes);
                out += std::to_string(s->score) + " | " + md_cell(s->motivation) + " | " + md_cell(notes) + " |\n";
            } else {
                out += "- | | |\n";
            }
        }

        if (it != project.assessments.end() && it->second.complete()) {
            const int total = total_score(it->second);
            const ThreatLevel level = classify_total(total);
            const SensitivityReport sens = sensitivity_within_band(it->second);
            out += "\n**" + std::string(level_name(level)) + " threat** (score " + std::to_string(total) + ", range " +
                   std::string(level_score_range(level)) + "). " + std::string(level_description(level)) + "\n";
            out += "\nWithin-band range: " + std::to_string(sens.min_total) + "-" + std::to_string(sens.max_total);
            out += sens.boundary_crossed ? " (crosses a threat-level boundary)\n" : "\n";
        } else {
            const int scored = it == project.assessments.end() ? 0 : it->second.scored_count();
            out += "\nIncomplete (" + std::to_string(scored) + "/7 scored); no threat level assigned.\n";
        }
    }
    return out;
}

} // namespace riddle
