#pragma once

#include "riddle/clock.hpp"
#include "riddle/rubric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace riddle {

// Answers to the four questions asked before any tool is scored.
struct AssetContext {
    std::string asset_to_secure;
    std::string threats_in_scope;
    std::string loss_estimate;
    std::string prevention_budget;

    bool complete() const { return missing().empty(); }
    /// Field names of blank answers, in question order.
    std::vector<std::string_view> missing() const;

    bool operator==(const AssetContext&) const = default;
};

struct AssetQuestion {
    std::string_view field;
    std::string_view question;
};

const std::array<AssetQuestion, 4>& asset_questions();

enum class ToolCategory {
    // cyber
    Virus,
    Worm,
    TrojanHorse,
    RemoteAccessTool,
    MaliciousCode,
    // kinetic
    ExplosiveAttack,
    Vandalism,
    ChemicalAttack,
    PerimeterBreach,
    Diversion,
    SabotageOfSupplyStructure,
    ArmedAssault,
};

inline constexpr std::array<ToolCategory, 12> kToolCategories = {
    ToolCategory::Virus,           ToolCategory::Worm,
    ToolCategory::TrojanHorse,     ToolCategory::RemoteAccessTool,
    ToolCategory::MaliciousCode,   ToolCategory::ExplosiveAttack,
    ToolCategory::Vandalism,       ToolCategory::ChemicalAttack,
    ToolCategory::PerimeterBreach, ToolCategory::Diversion,
    ToolCategory::SabotageOfSupplyStructure, ToolCategory::ArmedAssault,
};

std::string_view category_name(ToolCategory c);
/// Case-insensitive; '-' and '_' are accepted in place of spaces. Throws UnknownCategory.
ToolCategory parse_category(std::string_view text);
DisruptionMode mode_for(ToolCategory c);
/// "virus, worm, ..." for error messages and help text.
std::string category_list();

struct Source {
    std::string reference;
    std::string accessed; // YYYY-MM-DD

    bool operator==(const Source&) const = default;
};

struct ToolObservation {
    std::string id;
    std::string name;
    ToolCategory category = ToolCategory::Virus;
    DisruptionMode mode = DisruptionMode::Cyber;
    std::string working_principles;
    std::string known_vulnerabilities;
    std::vector<Source> sources;

    bool operator==(const ToolObservation&) const = default;
};

struct VariableScore {
    Variable variable = Variable::Resistance;
    int band = 0;
    int score = 0;
    std::string motivation;
    std::string notes;
    // Present when the band was derived from a measurement; absent when analyst-assigned.
    std::optional<RawMeasurement> raw;

    bool derived() const { return raw.has_value(); }
    bool operator==(const VariableScore&) const = default;
};

struct ToolAssessment {
    std::string tool_id;
    std::array<std::optional<VariableScore>, kVariableCount> scores{};

    bool complete() const { return missing().empty(); }
    std::vector<Variable> missing() const;
    int scored_count() const;
    const VariableScore* find(Variable v) const;

    bool operator==(const ToolAssessment&) const = default;
};

struct Project {
    std::string name;
    AssetContext asset_context;
    std::vector<ToolObservation> tools;
    std::map<std::string, ToolAssessment> assessments;
    Timestamp created{};
    Timestamp modified{};
    std::uint64_t revision = 0;

    bool operator==(const Project&) const = default;
};

/// Lowercase ASCII slug: runs of anything but [a-z0-9] collapse to '-'.
std::string slugify(std::string_view text);

Project create_project(std::string name, Timestamp now = now_utc());

/// Throws EmptyAnswer naming the first blank question; last write wins.
void set_asset_context(Project& project, AssetContext answers, Timestamp now = now_utc());

/// Assigns the slug id and infers the disruption mode from the category.
const ToolObservation& add_tool(Project& project, ToolObservation observation, Timestamp now = now_utc());

/// Replaces the free-text fields and sources of an existing tool.
const ToolObservation& update_tool_details(Project& project, std::string_view tool_id,
                                           std::string working_principles, std::string known_vulnerabilities,
                                           std::vector<Source> sources, Timestamp now = now_utc());

/// Removes the tool together with its assessment.
void remove_tool(Project& project, std::string_view tool_id, Timestamp now = now_utc());

/// Looks a tool up by id or, failing that, by exact name. Throws UnknownTool.
const ToolObservation& find_tool(const Project& project, std::string_view id_or_name);

struct BandChoice {
    int index = 0;
};

struct ScoreRequest {
    Variable variable = Variable::Resistance;
    std::variant<BandChoice, RawMeasurement> input = BandChoice{};
    std::optional<int> score;
    std::string motivation;
    std::string notes;
};

const ToolAssessment& record_score(Project& project, std::string_view tool_id, const ScoreRequest& request,
                                   Timestamp now = now_utc());

void clear_score(Project& project, std::string_view tool_id, Variable variable, Timestamp now = now_utc());

/// Sum of the seven scores. Throws IncompleteAssessment listing missing variables.
int total_score(const ToolAssessment& assessment);

struct MatrixRow {
    std::string tool_id;
    std::string tool_name;
    std::array<int, kVariableCount> scores{};
    int score_total = 0;
    ThreatLevel threat_level = ThreatLevel::Minor;
};

struct ExcludedTool {
    std::string tool_id;
    std::string tool_name;
    std::vector<Variable> missing;
};

struct Matrix {
    std::vector<MatrixRow> rows;        // score_total desc, then name asc
    std::vector<ExcludedTool> excluded; // incomplete or unscored tools
};

/// Throws NoCompleteAssessments when no row can be built.
Matrix build_matrix(const Project& project);

struct SensitivityReport {
    std::string tool_id;
    int min_total = 0;
    int max_total = 0;
    std::vector<ThreatLevel> levels_reachable; // ascending, unique
    bool boundary_crossed = false;
};

/// Enumerates every low/high assignment over the seven bands.
SensitivityReport sensitivity_for_bands(const std::array<int, kVariableCount>& band_indices);

SensitivityReport sensitivity_within_band(const ToolAssessment& assessment);

struct ProjectSensitivity {
    std::vector<SensitivityReport> reports;
    std::vector<ExcludedTool> excluded;
};

ProjectSensitivity sensitivity_for_project(const Project& project);

enum class Severity { Error, Warning };

std::string_view severity_name(Severity s);

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::string subject;
    std::string message;
};

std::vector<Finding> validate_project(const Project& project);

/// Structural invariants a stored project must satisfy. Throws CorruptDocument with a field path.
void check_invariants(const Project& project);

} // namespace riddle
