#include "riddle/rubric.hpp"

#include "riddle/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace riddle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kMinute = 60.0;
constexpr double kHour = 3600.0;
constexpr double kDay = 86400.0;
constexpr double kWeek = 7.0 * kDay;
constexpr double kMonth = 30.0 * kDay;

struct VariableNames {
    std::string_view short_name;
    std::string_view display;
    std::string_view key;
};

constexpr std::array<VariableNames, kVariableCount> kNames = {{
    {"R", "Resistance", "resistance"},
    {"I", "Intrusion timing", "intrusion_timing"},
    {"Dmg", "Damage", "damage"},
    {"Dis", "Disruption timing", "disruption_timing"},
    {"L", "Latency", "latency"},
    {"E", "Efficiency", "efficiency"},
    {"C", "Cost", "cost"},
}};

std::vector<ScoreBand> make_bands(std::array<std::string_view, kBandCount> texts) {
    std::vector<ScoreBand> bands;
    bands.reserve(kBandCount);
    for (int i = 1; i <= kBandCount; ++i) {
        bands.push_back({i, band_low_score(i), band_high_score(i), std::string(texts[i - 1])});
    }
    return bands;
}

RawInterval closed_open(double lo, double hi, int band) { return {lo, hi, true, false, band}; }
RawInterval open_closed(double lo, double hi, int band) { return {lo, hi, false, true, band}; }
RawInterval closed(double lo, double hi, int band) { return {lo, hi, true, true, band}; }

double log_midpoint(double a, double b) { return std::sqrt(a * b); }

Rubric resistance() {
    Rubric r;
    r.variable = Variable::Resistance;
    r.title = "Resistance variable";
    r.definition =
        "The ability of an offensive tool to withstand all the attempts taken and the forces applied by the "
        "target to obstruct, block or prevent the attack. It represents the measure of its strength and its "
        "vulnerabilities, depending on the ability of the attacker to move forward in the perpetration of "
        "the attack despite the difficulties encountered in attempting to achieve its ultimate goal. Such "
        "resistance is related to the tool’s intrinsic power, accuracy, sophistication and adaptability, to "
        "the predictability of its use, and the ability of the attacker in the accurate choice of the "
        "proportional and more suited one to the predetermined goal.";
    r.bands = make_bands({
        "Extreme resistance. The offensive tool can withstand attempts to stop or destroy it. It is almost "
        "impossible to interrupt its action or, even if blocked, due to its heavy resistance it can still "
        "produce the effects it was conceived for.",
        "High resistance. The offensive tool resists attempt to stop or destroy it, but the produced effects "
        "are smaller than when the attack started.",
        "Medium resilience. The instrument has an average resistance and is able to accomplish the attack; "
        "its effects are mediocre, but still of concern.",
        "Low resistance. The offensive tool has a low resistance, after several attempts to block it or "
        "destroy it, its action is arrested and it can't accomplish the action for which it was conceived or "
        "it can be of low relevance.",
        "None resistance. The offensive tool is not resistance and, since the first attempt to stop it or "
        "destroy it, does not retain the capabilities it had been designed for.",
    });
    return r;
}

Rubric intrusion_timing() {
    Rubric r;
    r.variable = Variable::IntrusionTiming;
    r.title = "Intrusion timing variable";
    r.definition =
        "Intrusion timing represents the time measurement that the tool employs and needs to finalize the "
        "attack and reach the target. It depends on the strength of the tool and the robustness of the "
        "target security system designed to prevent and neutralize any potential risk. If the timing "
        "intrusion is short, the instrument immediately accesses and increases the chance of success for the "
        "attacker. If, on the other hand, the intrusion timing is long, the tool could take a long time to "
        "access, proportionally increasing for the attacker the risk of failure.";
    r.bands = make_bands({
        "Immediate intrusion time. The instrument can access the System or the Infrastructure "
        "instantaneously, the time segment is between 1 second and 10 seconds.",
        "Short intrusion time. The instrument is able to enter the System or Infrastructure after a short "
        "time, the time segment is within 20 seconds and 1 minute.",
        "Medium intrusion time. The instrument can enter the System or Infrastructure over an average length "
        "of time, the time range is between 1 and 12 hours.",
        "Long intrusion time. The instrument manages to penetrate the System after a long period, the time "
        "range is between 1 day and 1 week.",
        "Very long intrusion time. The instrument manages to penetrate the System after a very long period, "
        "the intrusion time range is longer than one week.",
    });
    // Gaps between stated ranges split at their log-midpoint.
    const double g1 = log_midpoint(10.0, 20.0);
    const double g2 = log_midpoint(kMinute, kHour);
    const double g3 = log_midpoint(12.0 * kHour, kDay);
    r.boundaries = {
        closed_open(0.0, g1, 1),
        closed_open(g1, g2, 2),
        closed_open(g2, g3, 3),
        closed(g3, kWeek, 4),
        open_closed(kWeek, kInf, 5),
    };
    r.unit = RawUnit::Seconds;
    r.scale = Scale::Logarithmic;
    r.quantitative = true;
    return r;
}

Rubric damage() {
    Rubric r;
    r.variable = Variable::Damage;
    r.title = "Damage variable";
    r.definition =
        "Damages represent the short, medium, and long-term impact on the asset vulnerability consequences "
        "of the attack on the target. The different types are related to economic, reputational and "
        "psychological nature. The damage may concern material and physical goods (such as real estate, "
        "machinery, territorial areas) or intangible assets (such as: monetary / financial, image or "
        "reputation of an enterprise or a person, future business, business, profitability). Damage can "
        "therefore be related to the quality, adequacy, security, availability of the service or goods "
        "delivered by the target attack and the resulting image and integrity of the target, but they may "
        "also reflect on the population and the social order (in terms of victims, suffering Moral and "
        "physical, sectoral, public and national security). They depend on the type and range of action and "
        "the intrinsic force of the tool used to perpetrate the attack, but also on the resulting "
        "aggressiveness and pervasiveness of the attack and the relevance and resilience of the chosen "
        "target. In a context of high interdependence between infrastructures, a failure caused by human "
        "action consisting in a physical or cyber-attack against a critical infrastructure can easily "
        "produce domino or cascade effects and rapidly extend to other critical infrastructures, amplifying "
        "total damage and malfunctioning up to causing a catastrophic crisis of the entire national system.";
    r.bands = make_bands({
        "Severe damage. The tool can produce very serious damages. The resulting effects affect the physical "
        "infrastructure, the network or the organization to the extent of 90 to 100%. Such damages are either "
        "irreparable or difficult to remedy.",
        "High damage. The tool can produce serious damage. The resulting effects affect the physical "
        "infrastructure, the network or the organization to the extent of 70 to 90%. Such damages are "
        "repairable in the long-term.",
        "Medium damage. The tool can produce contained damage. The resulting effects affect the physical "
        "infrastructure, the network or the organization to the extent of 40 to 70 %. Such damages are "
        "repairable in the medium-term.",
        "Low damage. The tool can produce lowered damage. The resulting effects affect the physical "
        "infrastructure, the network or the organization to the extent of 10 to 40 %. Such damages are "
        "repairable in the short-term.",
        "Minimum damage. The tool can produce damage. The resulting effects affect the physical "
        "infrastructure, the network or the organization to the extent of 1 to 10 %. These damages can be "
        "immediately repaired.",
    });
    // Shared boundaries belong to the more severe band; below 1% clamps to the lowest band.
    r.boundaries = {
        closed_open(0.0, 10.0, 5),
        closed_open(10.0, 40.0, 4),
        closed_open(40.0, 70.0, 3),
        closed_open(70.0, 90.0, 2),
        closed(90.0, 100.0, 1),
    };
    r.unit = RawUnit::Percent;
    r.quantitative = true;
    return r;
}

Rubric disruption_timing() {
    Rubric r;
    r.variable = Variable::DisruptionTiming;
    r.title = "Disruption timing variable (*)";
    r.definition =
        "It measures the duration of the suspension or cease of the service caused by the offensive tool, "
        "which causes problems with its availability and its functionality. This interruption consists in "
        "the discontinuity of actions, processes, related to target activity, caused by the effective use of "
        "the instrument chosen to attack.";
    r.footnote =
        "(Descriptions of disruption measures should be altered in the presence of a cyber tool, extending "
        "the time segment from one hour to a week).";
    r.bands = make_bands({
        "Very long disruption. The effects of the instrument's action consist in interrupting the service for "
        "more than six months.",
        "Long disruption. The effects of the instrument's action consist in interrupting the service for a "
        "time period between six and three months.",
        "Medium disruption. The effects of the instrument's action consist in interrupting the service for a "
        "time period between three months and one week.",
        "Short disruption. The effects of the instrument's action consist in interrupting the service for a "
        "time period ≤ than one week.",
        "Minimum disruption. The effects of the instrument's action consist in interrupting the service for a "
        "time period ≤ than one day.",
    });
    r.boundaries = {
        closed(0.0, kDay, 5),
        open_closed(kDay, kWeek, 4),
        {kWeek, 3.0 * kMonth, false, false, 3},
        closed(3.0 * kMonth, 6.0 * kMonth, 2),
        open_closed(6.0 * kMonth, kInf, 1),
    };
    r.unit = RawUnit::Seconds;
    r.scale = Scale::Logarithmic;
    r.quantitative = true;
    return r;
}

Rubric cyber_disruption_timing() {
    Rubric r = disruption_timing();
    r.boundaries = {
        closed(0.0, kHour, 5),
        open_closed(kHour, kDay, 4),
        open_closed(kDay, 3.0 * kDay, 3),
        open_closed(3.0 * kDay, kWeek, 2),
        open_closed(kWeek, kInf, 1),
    };
    return r;
}

Rubric latency() {
    Rubric r;
    r.variable = Variable::Latency;
    r.title = "Latency variable";
    r.definition =
        "Latency means the time segment between the time of intrusion of an offensive tool within the system "
        "and the time when that tool is identified by the system security elements and the propagation or "
        "duplication of the effects of its use within the system. Specifically, this feature expresses the "
        "stealth mode of the instrument, which represents a series of technical or camouflage arrangements "
        "that make the instrument imperceptible, unidentifiable, not intercepted, as well as intrusion, even "
        "in the moment of permanence and carrying out the action within the structure. The greater the "
        "latency, the greater the value to be attributed to this measure, since it can act undisturbed "
        "within the structure and produce the malicious effects for which this mode has been developed.";
    r.bands = make_bands({
        "Very Long latency. The instrument is hardly identifiable or intercepted and therefore it is difficult "
        "to quantify the latency period and propagation of its effects.",
        "Long latency. The tool is able to endure in the system and multiply its effects for a long time "
        "before revealing itself.",
        "Medium latency. The tool is able to endure in the system and multiply its effects for a discrete time "
        "before revealing itself.",
        "Short latency. The tool is able to endure in the system and multiply its effects for a short time "
        "before revealing itself.",
        "Very Short latency. The tool is able to endure in the system and multiply its effects for a very "
        "short time before revealing itself.",
    });
    return r;
}

Rubric efficiency() {
    Rubric r;
    r.variable = Variable::Efficiency;
    r.title = "Efficiency variable";
    r.definition =
        "The efficiency of an instrument represents its ability to perform the actions it was designed and "
        "conceived for, the greater the ability to succeed, the greater its effects. Specifically, the "
        "elements that make up the efficiency are given by the ability to exploit the potentialities that "
        "have been attributed to it and the way these potentials come out without waste or loss of resources "
        "in the actual service supply. The efficiency of an attack tool represents a high-risk parameter "
        "considering that if an instrument is efficient it can produce its effects and then complete the "
        "attack in 100% of the cases. We can then classify and evaluate an instrument according to its "
        "efficiency rate, which is described in the table below.";
    r.bands = make_bands({
        "Highly efficient. The instrument is highly efficient and can produce the effect it has been conceived "
        "for in 100% of cases.",
        "Discreetly efficient. The instrument is highly efficient and can produce the effect it has been "
        "conceived for in 80% of cases.",
        "Mediumly efficient. The instrument is highly efficient and can produce the effect it has been "
        "conceived for in 60% of cases.",
        "Lowly efficient. The instrument is highly efficient and can produce the effect it has been conceived "
        "for in 30% of cases.",
        "Not efficient. The instrument is highly efficient and can produce the effect it has been conceived "
        "for in 10% of cases.",
    });
    // Anchors 100/80/60/30/10 split at arithmetic midpoints, ties to the higher band.
    r.boundaries = {
        closed_open(0.0, 20.0, 5),
        closed_open(20.0, 45.0, 4),
        closed_open(45.0, 70.0, 3),
        closed_open(70.0, 90.0, 2),
        closed(90.0, 100.0, 1),
    };
    r.unit = RawUnit::Percent;
    r.quantitative = true;
    return r;
}

Rubric cost() {
    Rubric r;
    r.variable = Variable::Cost;
    r.title = "Cost variable";
    r.definition =
        "It represents the expense you need to sustain to produce or buy a certain tool. It may depend on "
        "its sophistication and accuracy, its technical components, its availability and the know-how needed "
        "to originate it or to rip it. The specific cost is parameterized on a reversed value scale as a "
        "high-cost tool can be a barrier to a hostile actor, but a low-cost tool is an incentive to acquire "
        "that type of tool.";
    r.bands = make_bands({
        "Minimum cost. Costs for the purchase or production of the instrument are less than or equal to "
        "€ 1000.",
        "Low cost. Costs for the purchase or production of the instrument are equal to or greater than "
        "€ 1000.",
        "Medium cost. Costs for the purchase or production of the instrument are equal to or greater than "
        "€ 10000.",
        "High-cost. Costs for the purchase or production of the instrument are equal to or greater than "
        "€ 100000.",
        "Very high-cost. Costs for the purchase or production of the instrument are equal to or greater than "
        "€ 1000000.",
    });
    // Half-open decades; exactly EUR 1000 reads as the higher attacker barrier.
    r.boundaries = {
        closed_open(0.0, 1e3, 1),
        closed_open(1e3, 1e4, 2),
        closed_open(1e4, 1e5, 3),
        closed_open(1e5, 1e6, 4),
        closed_open(1e6, kInf, 5),
    };
    r.unit = RawUnit::Euros;
    r.scale = Scale::Logarithmic;
    r.reversed = true;
    r.quantitative = true;
    return r;
}

const Rubric& cyber_disruption_rubric() {
    static const Rubric rubric = cyber_disruption_timing();
    return rubric;
}

void check_unit(Variable v, const RawMeasurement& raw) {
    if (raw.unit() != unit_of(v)) {
        throw Error(ErrorCode::UnitMismatch,
                    std::string(display_name(v)) + " expects a " + std::string(unit_name(unit_of(v))) +
                        " measurement, got " + std::string(unit_name(raw.unit())));
    }
}

double parse_number(std::string_view text, std::string_view original) {
    std::string cleaned;
    for (char c : text) {
        if (c == ',' || c == '_') continue;
        cleaned.push_back(c);
    }
    double value = 0.0;
    const char* first = cleaned.data();
    const char* last = cleaned.data() + cleaned.size();
    if (!cleaned.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (cleaned.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidMeasurement, "cannot parse measurement '" + std::string(original) + "'");
    }
    return value;
}

std::string shortest(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace

std::string_view short_name(Variable v) { return kNames.at(index_of(v)).short_name; }
std::string_view display_name(Variable v) { return kNames.at(index_of(v)).display; }
std::string_view key_name(Variable v) { return kNames.at(index_of(v)).key; }

Variable parse_variable(std::string_view text) {
    const std::string wanted = detail::to_lower(detail::trim(text));
    for (Variable v : kVariables) {
        const auto& n = kNames[index_of(v)];
        if (wanted == detail::to_lower(n.short_name) || wanted == n.key || wanted == detail::to_lower(n.display)) {
            return v;
        }
    }
    throw Error(ErrorCode::UnknownVariable,
                "unknown variable '" + std::string(text) + "' (expected one of R, I, Dmg, Dis, L, E, C)");
}

bool is_quantitative(Variable v) { return v != Variable::Resistance && v != Variable::Latency; }

std::string_view mode_name(DisruptionMode mode) { return mode == DisruptionMode::Cyber ? "cyber" : "kinetic"; }

DisruptionMode parse_mode(std::string_view text) {
    const std::string m = detail::to_lower(detail::trim(text));
    if (m == "kinetic") return DisruptionMode::Kinetic;
    if (m == "cyber") return DisruptionMode::Cyber;
    throw Error(ErrorCode::InvalidArgument, "unknown disruption mode '" + std::string(text) + "'");
}

std::string_view unit_name(RawUnit unit) {
    switch (unit) {
    case RawUnit::Seconds: return "seconds";
    case RawUnit::Percent: return "percent";
    case RawUnit::Euros: return "euros";
    case RawUnit::Qualitative: return "qualitative";
    }
    return "qualitative";
}

RawUnit parse_unit(std::string_view text) {
    const std::string u = detail::to_lower(detail::trim(text));
    for (RawUnit unit : {RawUnit::Seconds, RawUnit::Percent, RawUnit::Euros, RawUnit::Qualitative}) {
        if (u == unit_name(unit)) return unit;
    }
    throw Error(ErrorCode::InvalidMeasurement, "unknown measurement unit '" + std::string(text) + "'");
}

RawUnit unit_of(Variable v) {
    switch (v) {
    case Variable::IntrusionTiming:
    case Variable::DisruptionTiming:
        return RawUnit::Seconds;
    case Variable::Damage:
    case Variable::Efficiency:
        return RawUnit::Percent;
    case Variable::Cost:
        return RawUnit::Euros;
    case Variable::Resistance:
    case Variable::Latency:
        return RawUnit::Qualitative;
    }
    return RawUnit::Qualitative;
}

RawMeasurement RawMeasurement::seconds(double value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw Error(ErrorCode::InvalidMeasurement, "duration must be a non-negative number of seconds");
    }
    return {RawUnit::Seconds, value};
}

RawMeasurement RawMeasurement::percent(double value) {
    if (!std::isfinite(value) || value < 0.0 || value > 100.0) {
        throw Error(ErrorCode::InvalidMeasurement, "percentage must lie in [0, 100]");
    }
    return {RawUnit::Percent, value};
}

RawMeasurement RawMeasurement::euros(double value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw Error(ErrorCode::InvalidMeasurement, "euro amount must be non-negative");
    }
    return {RawUnit::Euros, value};
}

RawMeasurement RawMeasurement::qualitative(int band_index) {
    if (band_index < 1 || band_index > kBandCount) {
        throw Error(ErrorCode::InvalidMeasurement, "qualitative level must be a band index 1..5");
    }
    return {RawUnit::Qualitative, static_cast<double>(band_index)};
}

RawMeasurement parse_raw_measurement(std::string_view text, Variable v) {
    std::string_view t = detail::trim(text);
    switch (unit_of(v)) {
    case RawUnit::Seconds: {
        double scale = 1.0;
        if (!t.empty()) {
            switch (t.back()) {
            case 's': scale = 1.0; break;
            case 'm': scale = kMinute; break;
            case 'h': scale = kHour; break;
            case 'd': scale = kDay; break;
            case 'w': scale = kWeek; break;
            default: scale = 0.0; break;
            }
            if (scale != 0.0) {
                t.remove_suffix(1);
            } else {
                scale = 1.0;
            }
        }
        return RawMeasurement::seconds(parse_number(detail::trim(t), text) * scale);
    }
    case RawUnit::Percent:
        if (!t.empty() && t.back() == '%') t.remove_suffix(1);
        return RawMeasurement::percent(parse_number(detail::trim(t), text));
    case RawUnit::Euros: {
        constexpr std::string_view euro_sign = "€";
        if (t.substr(0, euro_sign.size()) == euro_sign) t.remove_prefix(euro_sign.size());
        return RawMeasurement::euros(parse_number(detail::trim(t), text));
    }
    case RawUnit::Qualitative: {
        const double band = parse_number(t, text);
        if (band != std::floor(band)) {
            throw Error(ErrorCode::InvalidMeasurement, "qualitative level must be an integer band index");
        }
        return RawMeasurement::qualitative(static_cast<int>(band));
    }
    }
    throw Error(ErrorCode::InvalidMeasurement, "cannot parse measurement");
}

std::string format_raw(const RawMeasurement& raw) {
    switch (raw.unit()) {
    case RawUnit::Seconds: return shortest(raw.value()) + "s";
    case RawUnit::Percent: return shortest(raw.value()) + "%";
    case RawUnit::Euros: return shortest(raw.value());
    case RawUnit::Qualitative: return std::to_string(static_cast<int>(raw.value()));
    }
    return shortest(raw.value());
}

bool RawInterval::contains(double x) const {
    const bool above = lower_closed ? x >= lower : x > lower;
    const bool below = upper_closed ? x <= upper : x < upper;
    return above && below;
}

const ScoreBand& Rubric::band(int index) const {
    if (index < 1 || index > static_cast<int>(bands.size())) {
        throw Error(ErrorCode::InvalidArgument, "band index must be 1..5");
    }
    return bands[static_cast<std::size_t>(index - 1)];
}

const RawInterval& Rubric::interval_of(int band_index) const {
    auto it = std::find_if(boundaries.begin(), boundaries.end(),
                           [&](const RawInterval& iv) { return iv.band == band_index; });
    if (it == boundaries.end()) {
        throw Error(ErrorCode::QualitativeVariable,
                    std::string(display_name(variable)) + " has no raw interval for band " +
                        std::to_string(band_index));
    }
    return *it;
}

bool Rubric::severity_rises_with_raw() const {
    return !boundaries.empty() && boundaries.front().band > boundaries.back().band;
}

const std::vector<Rubric>& builtin_rubrics() {
    static const std::vector<Rubric> rubrics = {
        resistance(), intrusion_timing(), damage(), disruption_timing(), latency(), efficiency(), cost(),
    };
    return rubrics;
}

const Rubric& rubric_for(Variable v, DisruptionMode mode) {
    if (v == Variable::DisruptionTiming && mode == DisruptionMode::Cyber) {
        return cyber_disruption_rubric();
    }
    return builtin_rubrics()[index_of(v)];
}

ScoreBand derive_band(Variable v, const RawMeasurement& raw, DisruptionMode mode) {
    if (!is_quantitative(v)) {
        throw Error(ErrorCode::QualitativeVariable,
                    std::string(display_name(v)) + " is qualitative; select a band directly");
    }
    check_unit(v, raw);
    const Rubric& rubric = rubric_for(v, mode);
    for (const RawInterval& iv : rubric.boundaries) {
        if (iv.contains(raw.value())) {
            return rubric.band(iv.band);
        }
    }
    // Unreachable for validated measurements: the boundaries partition each raw axis.
    throw Error(ErrorCode::OutOfRange, "measurement " + format_raw(raw) + " falls outside every band");
}

double refinement_split(const Rubric& rubric, int band_index) {
    const RawInterval& iv = rubric.interval_of(band_index);
    if (rubric.scale == Scale::Linear) {
        return 0.5 * (iv.lower + iv.upper);
    }
    // Open-ended log intervals are capped one decade from their finite end.
    const double hi = std::isinf(iv.upper) ? iv.lower * 10.0 : iv.upper;
    const double lo = iv.lower > 0.0 ? iv.lower : hi / 10.0;
    return log_midpoint(lo, hi);
}

int refine_score(const ScoreBand& band, const std::optional<RawMeasurement>& raw, const Rubric& rubric) {
    if (!raw) {
        return band.low_score;
    }
    if (!rubric.quantitative) {
        if (raw->unit() != RawUnit::Qualitative) {
            throw Error(ErrorCode::UnitMismatch,
                        std::string(display_name(rubric.variable)) + " takes only a qualitative level");
        }
        if (static_cast<int>(raw->value()) != band.index) {
            throw Error(ErrorCode::OutOfBand, "qualitative level does not match the selected band");
        }
        return band.low_score;
    }
    check_unit(rubric.variable, *raw);
    const RawInterval& iv = rubric.interval_of(band.index);
    if (!iv.contains(raw->value())) {
        throw Error(ErrorCode::OutOfBand, "measurement " + format_raw(*raw) + " lies outside band " +
                                              std::to_string(band.low_score) + "-" +
                                              std::to_string(band.high_score));
    }
    const double split = refinement_split(rubric, band.index);
    const bool more_severe =
        rubric.severity_rises_with_raw() ? raw->value() >= split : raw->value() <= split;
    return more_severe ? band.high_score : band.low_score;
}

std::string_view level_name(ThreatLevel level) {
    switch (level) {
    case ThreatLevel::Minor: return "Minor";
    case ThreatLevel::Medium: return "Medium";
    case ThreatLevel::Severe: return "Severe";
    }
    return "Minor";
}

ThreatLevel parse_level(std::string_view text) {
    const std::string t = detail::to_lower(detail::trim(text));
    for (ThreatLevel level : {ThreatLevel::Minor, ThreatLevel::Medium, ThreatLevel::Severe}) {
        if (t == detail::to_lower(level_name(level))) return level;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown threat level '" + std::string(text) + "'");
}

std::string_view level_description(ThreatLevel level) {
    switch (level) {
    case ThreatLevel::Severe:
        return "The severe threat level represents a tool that is capable of causing serious or irreversible "
               "damage to infrastructures, so in presence of such high score, it is mandatory to pay close "
               "attention and to put in place all the necessary activities to reduce the risk related to the "
               "tool potential activity.";
    case ThreatLevel::Medium:
        return "The medium threat level represents a tool that is capable of causing medium and repairable "
               "damages to infrastructures, so in presence of such score, it is necessary to pay a discrete "
               "prudence but it is still necessary to reduce the risk related to the tool potential activity.";
    case ThreatLevel::Minor:
        return "The minor threat level represents a tool that is capable of causing minor or soft and easily "
               "repairable damages to infrastructures, so in presence of such low score, it is still necessary "
               "to put in place prevention activity to decrease the risk related to the tool potential "
               "activity.";
    }
    return {};
}

std::string_view level_score_range(ThreatLevel level) {
    switch (level) {
    case ThreatLevel::Severe: return "50-70";
    case ThreatLevel::Medium: return "25-50";
    case ThreatLevel::Minor: return "0-25";
    }
    return {};
}

ThreatLevel classify_total(int total) {
    if (total < kMinTotal || total > kMaxTotal) {
        throw Error(ErrorCode::OutOfRange, "total " + std::to_string(total) + " outside 0..70");
    }
    if (total >= kSevereFloor) return ThreatLevel::Severe;
    if (total >= kMediumFloor) return ThreatLevel::Medium;
    return ThreatLevel::Minor;
}

std::optional<int> points_to_next_level(int total) {
    switch (classify_total(total)) {
    case ThreatLevel::Minor: return kMediumFloor - total;
    case ThreatLevel::Medium: return kSevereFloor - total;
    case ThreatLevel::Severe: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

nlohmann::json interval_json(const RawInterval& iv) {
    nlohmann::json j;
    j["band"] = iv.band;
    j["lower"] = iv.lower;
    j["upper"] = std::isinf(iv.upper) ? nlohmann::json(nullptr) : nlohmann::json(iv.upper);
    j["lower_closed"] = iv.lower_closed;
    j["upper_closed"] = iv.upper_closed;
    return j;
}

nlohmann::json boundaries_json(const Rubric& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& iv : r.boundaries) {
        auto j = interval_json(iv);
        j["refinement_split"] = refinement_split(r, iv.band);
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace

nlohmann::json rubrics_document() {
    nlohmann::json doc;
    doc["format"] = "riddle-rubrics";
    doc["version"] = 1;
    nlohmann::json rubrics = nlohmann::json::array();
    for (const Rubric& r : builtin_rubrics()) {
        nlohmann::json j;
        j["variable"] = key_name(r.variable);
        j["short_name"] = short_name(r.variable);
        j["name"] = display_name(r.variable);
        j["title"] = r.title;
        j["definition"] = r.definition;
        if (!r.footnote.empty()) j["footnote"] = r.footnote;
        j["quantitative"] = r.quantitative;
        j["reversed"] = r.reversed;
        j["unit"] = unit_name(r.unit);
        j["scale"] = r.scale == Scale::Logarithmic ? "logarithmic" : "linear";
        nlohmann::json bands = nlohmann::json::array();
        for (const ScoreBand& b : r.bands) {
            bands.push_back({{"index", b.index},
                             {"low_score", b.low_score},
                             {"high_score", b.high_score},
                             {"description", b.description}});
        }
        j["bands"] = std::move(bands);
        if (r.quantitative) {
            j["boundaries"] = boundaries_json(r);
        } else {
            j["boundaries"] = nullptr;
        }
        if (r.variable == Variable::DisruptionTiming) {
            j["cyber_boundaries"] = boundaries_json(cyber_disruption_rubric());
        }
        rubrics.push_back(std::move(j));
    }
    doc["rubrics"] = std::move(rubrics);

    nlohmann::json levels = nlohmann::json::array();
    for (ThreatLevel level : {ThreatLevel::Severe, ThreatLevel::Medium, ThreatLevel::Minor}) {
        const int lo = level == ThreatLevel::Severe ? kSevereFloor
                       : level == ThreatLevel::Medium ? kMediumFloor
                                                      : kMinTotal;
        const int hi = level == ThreatLevel::Severe ? kMaxTotal
                       : level == ThreatLevel::Medium ? kSevereFloor
                                                      : kMediumFloor;
        levels.push_back({{"level", level_name(level)},
                          {"description", level_description(level)},
                          {"scores", level_score_range(level)},
                          {"lower", lo},
                          {"upper", hi},
                          {"upper_inclusive", level == ThreatLevel::Severe}});
    }
    doc["threat_levels"] = std::move(levels);
    return doc;
}

} // namespace riddle
