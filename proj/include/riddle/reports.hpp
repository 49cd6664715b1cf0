#pragma once

#include "riddle/assessment.hpp"

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace riddle {

// Machine-readable views shared by the CLI and the HTTP service. The matrix
// keys disambiguate the two D columns as dmg and dis.

nlohmann::json matrix_json(const Matrix& matrix);
nlohmann::json excluded_json(const std::vector<ExcludedTool>& excluded);
nlohmann::json sensitivity_json(const SensitivityReport& report);
nlohmann::json project_sensitivity_json(const ProjectSensitivity& sensitivity);
nlohmann::json findings_json(const std::vector<Finding>& findings);
nlohmann::json tool_json(const ToolObservation& tool);
nlohmann::json score_view_json(const VariableScore& score);
/// Scores plus completeness, and total/threat level once complete.
nlohmann::json assessment_json(const ToolAssessment& assessment);

/// Fixed-width text table with the comparison-table header kept verbatim.
std::string matrix_table(const Matrix& matrix);

/// Markdown report: asset context, comparison table, and one description table per tool.
std::string markdown_report(const Project& project);

} // namespace riddle
