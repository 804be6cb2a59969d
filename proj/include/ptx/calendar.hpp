#pragma once

#include <cstdint>
#include <string>

namespace ptx::cal {

constexpr bool is_leap_year(int year)
{
    return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

constexpr int days_in_year(int year) { return is_leap_year(year) ? 366 : 365; }
constexpr int hours_in_year(int year) { return days_in_year(year) * 24; }

constexpr int hour_of_day(long hour_index) { return static_cast<int>(hour_index % 24); }
constexpr int day_of_year(long hour_index) { return static_cast<int>(hour_index / 24); }

/// Month 1..12 for a zero-based day-of-year.
int month_of_day(int year, int day_of_year);

/// Danish time-of-use convention: summer = April..September.
bool is_summer_month(int month);

/// "YYYY-MM-DDTHH:00:00Z" for an hour index into the given year.
std::string hour_timestamp(int year, long hour_index);

} // namespace ptx::cal
