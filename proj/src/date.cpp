// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/date.hpp"

#include <charconv>
#include <cstdio>

namespace proverum {

namespace {
bool is_leap(std::int32_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

std::uint8_t days_in_month(std::int32_t y, std::uint8_t m) {
    static constexpr std::uint8_t kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}
}  // namespace

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto y = parse_int(text.substr(0, 4));
    auto m = parse_int(text.substr(5, 2));
    auto d = parse_int(text.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    Date date{static_cast<std::int32_t>(*y), static_cast<std::uint8_t>(*m),
              static_cast<std::uint8_t>(*d)};
    if (!date.valid()) return std::nullopt;
    return date;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, unsigned{month}, unsigned{day});
    return buf;
}

std::int32_t Date::age_at(const Date& on) const {
    std::int32_t age = on.year - year;
    if (on.month < month || (on.month == month && on.day < day)) --age;
    return age;
}

Date Date::next_day() const {
    Date d = *this;
    if (day < days_in_month(year, month)) {
        ++d.day;
    } else if (month < 12) {
        ++d.month;
        d.day = 1;
    } else {
        ++d.year;
        d.month = 1;
        d.day = 1;
    }
    return d;
}

}  // namespace proverum
