#include "riddle/clock.hpp"

#include "riddle/error.hpp"

#include <cstdio>

namespace riddle {

namespace {

using namespace std::chrono;

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

bool parse_ymd(std::string_view s, year_month_day& out) {
    int y = 0, m = 0, d = 0;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return false;
    if (!parse_fixed(s, 0, 4, y) || !parse_fixed(s, 5, 2, m) || !parse_fixed(s, 8, 2, d)) return false;
    out = year{y} / month{static_cast<unsigned>(m)} / day{static_cast<unsigned>(d)};
    return out.ok();
}

} // namespace

Timestamp now_utc() { return floor<seconds>(system_clock::now()); }

std::string format_iso8601(Timestamp t) {
    const auto dp = floor<days>(t);
    const year_month_day ymd{dp};
    const hh_mm_ss hms{t - dp};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

Timestamp parse_iso8601(std::string_view text) {
    year_month_day ymd{};
    int hh = 0, mm = 0, ss = 0;
    const bool ok = text.size() == 20 && parse_ymd(text, ymd) && text[10] == 'T' && text[13] == ':' &&
                    text[16] == ':' && text[19] == 'Z' && parse_fixed(text, 11, 2, hh) &&
                    parse_fixed(text, 14, 2, mm) && parse_fixed(text, 17, 2, ss) && hh < 24 && mm < 60 &&
                    ss < 60;
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, "expected UTC timestamp YYYY-MM-DDTHH:MM:SSZ, got '" +
                                                    std::string(text) + "'");
    }
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_date(Timestamp t) { return format_iso8601(t).substr(0, 10); }

bool is_valid_date(std::string_view text) {
    year_month_day ymd{};
    return text.size() == 10 && parse_ymd(text, ymd);
}

} // namespace riddle
