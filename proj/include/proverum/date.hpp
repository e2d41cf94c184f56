// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace proverum {

/// Proleptic Gregorian calendar date, "YYYY-MM-DD" in all text formats.
struct Date {
    std::int32_t year = 1970;
    std::uint8_t month = 1;
    std::uint8_t day = 1;

    auto operator<=>(const Date&) const = default;

    static std::optional<Date> parse(std::string_view text);
    std::string to_string() const;
    bool valid() const;

    /// Whole years completed between this date (as birth date) and `on`.
    /// Negative if `on` precedes the birth date's first anniversary year.
    std::int32_t age_at(const Date& on) const;

    /// Calendar successor; used by test oracles to walk day by day.
    Date next_day() const;
};

}  // namespace proverum
