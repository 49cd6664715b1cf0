#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace riddle {

// Ordering follows the acronym R.I.D.D.L.E.+(C).
enum class Variable {
    Resistance,
    IntrusionTiming,
    Damage,
    DisruptionTiming,
    Latency,
    Efficiency,
    Cost,
};

inline constexpr std::size_t kVariableCount = 7;

inline constexpr std::array<Variable, kVariableCount> kVariables = {
    Variable::Resistance, Variable::IntrusionTiming, Variable::Damage,
    Variable::DisruptionTiming, Variable::Latency, Variable::Efficiency,
    Variable::Cost,
};

constexpr std::size_t index_of(Variable v) { return static_cast<std::size_t>(v); }

/// R, I, Dmg, Dis, L, E, C
std::string_view short_name(Variable v);
/// "Intrusion timing"
std::string_view display_name(Variable v);
/// "intrusion_timing"
std::string_view key_name(Variable v);
/// Accepts short, key or display names, case-insensitively.
Variable parse_variable(std::string_view text);

bool is_quantitative(Variable v);

enum class DisruptionMode { Kinetic, Cyber };

std::string_view mode_name(DisruptionMode mode);
DisruptionMode parse_mode(std::string_view text);

enum class RawUnit { Seconds, Percent, Euros, Qualitative };

std::string_view unit_name(RawUnit unit);
RawUnit parse_unit(std::string_view text);

/// Raw unit a quantitative variable is measured in; Qualitative for R and L.
RawUnit unit_of(Variable v);

class RawMeasurement {
public:
    static RawMeasurement seconds(double value);
    static RawMeasurement percent(double value);
    static RawMeasurement euros(double value);
    static RawMeasurement qualitative(int band_index);

    RawUnit unit() const noexcept { return unit_; }
    double value() const noexcept { return value_; }

    bool operator==(const RawMeasurement&) const = default;

private:
    RawMeasurement(RawUnit unit, double value) : unit_(unit), value_(value) {}

    RawUnit unit_;
    double value_;
};

/// Parses analyst input in the context of a variable.
///   durations: number with optional s/m/h/d/w suffix (seconds when bare)
///   percentages: number with optional '%' suffix
///   euros: plain number, optional leading '€' and ',' or '_' digit grouping
///   qualitative: band index 1..5
RawMeasurement parse_raw_measurement(std::string_view text, Variable v);

/// Inverse of parse_raw_measurement: "30s", "95%", "500", "3".
std::string format_raw(const RawMeasurement& raw);

struct ScoreBand {
    int index = 0;       // 1 = most severe
    int low_score = 0;
    int high_score = 0;
    std::string description;

    bool contains_score(int score) const { return score == low_score || score == high_score; }
};

/// Score pair for a band index: 1 -> (9,10) ... 5 -> (1,2).
constexpr int band_low_score(int band_index) { return 11 - 2 * band_index; }
constexpr int band_high_score(int band_index) { return 12 - 2 * band_index; }
/// Band index holding an integer score in 1..10.
constexpr int band_index_for_score(int score) { return (12 - score) / 2; }

inline constexpr int kBandCount = 5;

/// Half-open or closed interval on a raw axis; `upper` may be +infinity.
struct RawInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_closed = true;
    bool upper_closed = false;
    int band = 0;

    bool contains(double x) const;
};

enum class Scale { Linear, Logarithmic };

struct Rubric {
    Variable variable = Variable::Resistance;
    std::string title;
    std::string definition;
    std::string footnote;
    std::vector<ScoreBand> bands;
    // Resolved partition of the raw axis, ascending; empty for qualitative rubrics.
    std::vector<RawInterval> boundaries;
    RawUnit unit = RawUnit::Qualitative;
    Scale scale = Scale::Linear;
    bool reversed = false;
    bool quantitative = false;

    const ScoreBand& band(int index) const;
    const RawInterval& interval_of(int band_index) const;
    /// True when a larger raw value means a more severe band.
    bool severity_rises_with_raw() const;
};

/// The seven built-in rubrics in variable order. Disruption timing carries the kinetic boundaries.
const std::vector<Rubric>& builtin_rubrics();

/// Rubric with boundaries for the given mode. Mode only affects DisruptionTiming.
const Rubric& rubric_for(Variable v, DisruptionMode mode = DisruptionMode::Kinetic);

ScoreBand derive_band(Variable v, const RawMeasurement& raw, DisruptionMode mode);

/// Raw value splitting a band's interval into its less- and more-severe halves.
double refinement_split(const Rubric& rubric, int band_index);

/// Picks the band's high score when the measurement lies in the more-severe half
/// (ties go high), its low score otherwise or when no measurement is given.
int refine_score(const ScoreBand& band, const std::optional<RawMeasurement>& raw, const Rubric& rubric);

enum class ThreatLevel { Minor, Medium, Severe };

inline constexpr int kMinTotal = 0;
inline constexpr int kMediumFloor = 25;
inline constexpr int kSevereFloor = 50;
inline constexpr int kMaxTotal = 70;

std::string_view level_name(ThreatLevel level);
ThreatLevel parse_level(std::string_view text);
/// Threat level description text.
std::string_view level_description(ThreatLevel level);
/// Score range as printed in the threat level table, e.g. "50-70".
std::string_view level_score_range(ThreatLevel level);

/// Minor [0,25), Medium [25,50), Severe [50,70].
ThreatLevel classify_total(int total);

/// Points still needed to reach the next level, or nullopt at Severe.
std::optional<int> points_to_next_level(int total);

/// JSON export of every rubric (verbatim band text, score pairs, resolved
/// boundaries, cyber disruption boundaries) plus the threat level table.
nlohmann::json rubrics_document();

} // namespace riddle
