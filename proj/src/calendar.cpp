#include "ptx/calendar.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace ptx::cal {

namespace {
constexpr std::array<int, 12> kMonthDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
}

int month_of_day(int year, int day_of_year)
{
    int remaining = day_of_year;
    for (int m = 0; m < 12; ++m) {
        int len = kMonthDays[static_cast<size_t>(m)] + (m == 1 && is_leap_year(year) ? 1 : 0);
        if (remaining < len)
            return m + 1;
        remaining -= len;
    }
    throw std::out_of_range("day_of_year out of range: " + std::to_string(day_of_year));
}

bool is_summer_month(int month) { return month >= 4 && month <= 9; }

std::string hour_timestamp(int year, long hour_index)
{
    int day = day_of_year(hour_index);
    int hod = hour_of_day(hour_index);
    int remaining = day;
    int month = 1;
    for (int m = 0; m < 12; ++m) {
        int len = kMonthDays[static_cast<size_t>(m)] + (m == 1 && is_leap_year(year) ? 1 : 0);
        if (remaining < len) {
            month = m + 1;
            break;
        }
        remaining -= len;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", year, month, remaining + 1, hod);
    return buf;
}

} // namespace ptx::cal
