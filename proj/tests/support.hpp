#pragma once

// Test-only oracles and generators. The oracles restate the boundary rules as
// plain if-chains, independent of the interval tables in the library.

#include "riddle/assessment.hpp"
#include "riddle/error.hpp"
#include "riddle/rubric.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <filesystem>
#include <optional>
#include <random>
#include <sys/wait.h>
#include <unistd.h>
#include <string>
#include <vector>

namespace riddle::testing {

inline constexpr double kMin = 60.0;
inline constexpr double kHr = 3600.0;
inline constexpr double kDy = 86400.0;
inline constexpr double kWk = 7.0 * kDy;
inline constexpr double kMo = 30.0 * kDy;

/// Code of the riddle::Error thrown by `f`, or nullopt if it returned normally.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

/// Expected band index (1 = most severe) for a raw value.
inline int oracle_band(Variable v, double x, DisruptionMode mode = DisruptionMode::Kinetic) {
    switch (v) {
    case Variable::IntrusionTiming:
        if (x < std::sqrt(10.0 * 20.0)) return 1;
        if (x < std::sqrt(kMin * kHr)) return 2;
        if (x < std::sqrt(12.0 * kHr * kDy)) return 3;
        if (x <= kWk) return 4;
        return 5;
    case Variable::Damage:
        if (x >= 90.0) return 1;
        if (x >= 70.0) return 2;
        if (x >= 40.0) return 3;
        if (x >= 10.0) return 4;
        return 5;
    case Variable::Efficiency:
        if (x >= 90.0) return 1;
        if (x >= 70.0) return 2;
        if (x >= 45.0) return 3;
        if (x >= 20.0) return 4;
        return 5;
    case Variable::Cost:
        if (x < 1e3) return 1;
        if (x < 1e4) return 2;
        if (x < 1e5) return 3;
        if (x < 1e6) return 4;
        return 5;
    case Variable::DisruptionTiming:
        if (mode == DisruptionMode::Cyber) {
            if (x <= kHr) return 5;
            if (x <= kDy) return 4;
            if (x <= 3.0 * kDy) return 3;
            if (x <= kWk) return 2;
            return 1;
        }
        if (x <= kDy) return 5;
        if (x <= kWk) return 4;
        if (x < 3.0 * kMo) return 3;
        if (x <= 6.0 * kMo) return 2;
        return 1;
    default:
        std::abort();
    }
}

/// Interval-membership oracle for the threat level table.
inline ThreatLevel oracle_level(int total) {
    if (0 <= total && total < 25) return ThreatLevel::Minor;
    if (25 <= total && total < 50) return ThreatLevel::Medium;
    return ThreatLevel::Severe; // 50 <= total <= 70
}

inline RawMeasurement make_raw(Variable v, double x) {
    switch (unit_of(v)) {
    case RawUnit::Seconds: return RawMeasurement::seconds(x);
    case RawUnit::Percent: return RawMeasurement::percent(x);
    case RawUnit::Euros: return RawMeasurement::euros(x);
    default: std::abort();
    }
}

/// `count` log-spaced probes over [lo, hi].
inline std::vector<double> log_probes(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) out.push_back(std::exp(a + (b - a) * i / (count - 1)));
    // exp(log(x)) can land one ulp outside a closed range.
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// Probe range per quantitative variable: spans every boundary with margin.
inline std::pair<double, double> probe_range(Variable v) {
    switch (unit_of(v)) {
    case RawUnit::Seconds: return {1e-3, 1e9};
    case RawUnit::Percent: return {1e-3, 100.0};
    case RawUnit::Euros: return {1e-2, 1e10};
    default: std::abort();
    }
}

inline AssetContext sample_context() {
    return {"Regional water treatment SCADA", "Cyber intrusion and sabotage", "EUR 2M per day of outage",
            "EUR 150k per year"};
}

class Generator {
public:
    explicit Generator(std::uint32_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    std::string text(int max_len) {
        static const std::vector<std::string> atoms = {"a", "b", "z", "Q", "7", " ", ",", "\"", "|", "\n",
                                                       "é", "€", "—", "x", "tool", "line"};
        std::string out;
        const int n = uniform(0, max_len);
        for (int i = 0; i < n; ++i) out += atoms[static_cast<std::size_t>(uniform(0, int(atoms.size()) - 1))];
        return out;
    }

    std::string nonblank(int max_len) { return "t" + text(max_len); }

    double raw_value(Variable v) {
        auto [lo, hi] = probe_range(v);
        if (unit_of(v) == RawUnit::Percent) return uniform_real(0.0, 100.0);
        return std::exp(uniform_real(std::log(lo), std::log(hi)));
    }

    ScoreRequest score_request(Variable v) {
        ScoreRequest r;
        r.variable = v;
        r.motivation = nonblank(20);
        r.notes = text(10);
        if (is_quantitative(v) && coin()) {
            r.input = make_raw(v, raw_value(v));
        } else {
            const int band = uniform(1, 5);
            r.input = BandChoice{band};
            if (coin()) r.score = coin() ? band_low_score(band) : band_high_score(band);
        }
        return r;
    }

    Project project(int max_tools, bool complete_all) {
        const Timestamp t0{std::chrono::seconds{1700000000 + uniform(0, 1000000)}};
        Project p = create_project("Project " + std::to_string(uniform(0, 99999)) + text(6), t0);
        set_asset_context(p, {nonblank(12), nonblank(12), nonblank(12), nonblank(12)}, t0);
        const int tools = uniform(0, max_tools);
        for (int i = 0; i < tools; ++i) {
            ToolObservation obs;
            obs.name = "Tool " + std::to_string(i) + " " + text(8);
            obs.category = kToolCategories[static_cast<std::size_t>(uniform(0, int(kToolCategories.size()) - 1))];
            obs.working_principles = text(30);
            obs.known_vulnerabilities = text(30);
            const int sources = uniform(0, 3);
            for (int s = 0; s < sources; ++s) {
                obs.sources.push_back({nonblank(15), "20" + std::to_string(10 + uniform(0, 15)) + "-0" +
                                                         std::to_string(uniform(1, 9)) + "-1" +
                                                         std::to_string(uniform(0, 9))});
            }
            const std::string id = add_tool(p, obs, t0 + std::chrono::seconds{i}).id;
            for (Variable v : kVariables) {
                if (complete_all || coin()) record_score(p, id, score_request(v), t0 + std::chrono::seconds{100 + i});
            }
        }
        return p;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::mt19937 rng{std::random_device{}()};
    auto dir = std::filesystem::temp_directory_path() /
               ("riddle-" + tag + "-" + std::to_string(rng()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string shell_quote(const std::string& arg) {
    std::string q = "'";
    for (char c : arg) {
        if (c == '\'') q += "'\\''";
        else q += c;
    }
    return q + "'";
}

/// Runs the riddle binary with stdin from /dev/null; `env` is a prefix such as "RIDDLE_PROJECT=/x".
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& env = {}) {
    static int counter = 0;
    const auto base = std::filesystem::temp_directory_path() /
                      ("riddle-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::string cmd = env.empty() ? "" : "env " + env + " ";
    cmd += shell_quote(RIDDLE_BIN);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " </dev/null >" + shell_quote(base.string() + ".out") + " 2>" + shell_quote(base.string() + ".err");
    const int status = std::system(cmd.c_str());
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(base.string() + ".out");
    r.err = slurp(base.string() + ".err");
    std::filesystem::remove(base.string() + ".out");
    std::filesystem::remove(base.string() + ".err");
    return r;
}

} // namespace riddle::testing
